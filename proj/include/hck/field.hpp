#pragma once

#include <cstdint>

namespace hck {

struct PrimeModulus {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::size_t k = 0;
};

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    return static_cast<std::uint64_t>(s % p);
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? (a - b) % p : static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + p - b % p) % p);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t x);

// Smallest prime >= 2 n^k; checks 2 n^k fits in 63 bits and the result is below n^(2k).
PrimeModulus choose_prime(std::size_t n, std::size_t k);

}  // namespace hck
