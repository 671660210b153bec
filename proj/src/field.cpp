#include "hck/field.hpp"

#include <stdexcept>

#include "hck/errors.hpp"

namespace hck {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (x == q) return true;
        if (x % q == 0) return false;
    }
    std::uint64_t d = x - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are sufficient for every n < 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t y = powmod(a, d, x);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            y = mulmod(y, y, x);
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus choose_prime(std::size_t n, std::size_t k) {
    if (n < 2 || k < 2) throw std::invalid_argument("choose_prime: needs n >= 2 and k >= 2");
    unsigned __int128 nk = 1;
    for (std::size_t i = 0; i < k; ++i) {
        nk *= n;
        if (nk > (static_cast<unsigned __int128>(1) << 62)) throw std::overflow_error("choose_prime: 2 n^k exceeds 63 bits");
    }
    std::uint64_t c = static_cast<std::uint64_t>(2 * nk);
    while (!is_prime(c)) ++c;
    // Bertrand gives a prime below 4 n^k <= n^(2k).
    const unsigned __int128 upper = nk * nk;
    if (static_cast<unsigned __int128>(c) >= upper) throw InvariantError("choose_prime: prime not below n^(2k)");
    return PrimeModulus{c, n, k};
}

}  // namespace hck
