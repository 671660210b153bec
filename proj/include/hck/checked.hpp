#pragma once

#include <cstdint>

#include "hck/errors.hpp"
#include "hck/hypergraph.hpp"

namespace hck {

inline Weight add_checked(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("weight sum overflows int64");
    return r;
}

// Min-plus addition: kInfWeight absorbs. Finite sums are overflow-checked and must not
// land on the sentinel.
inline Weight add_inf(Weight a, Weight b) {
    if (a == kInfWeight || b == kInfWeight) return kInfWeight;
    const Weight r = add_checked(a, b);
    if (r == kInfWeight) throw OverflowError("weight sum collides with the infinity sentinel");
    return r;
}

inline std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("count overflows uint64");
    return r;
}

inline std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("count overflows uint64");
    return r;
}

inline std::uint64_t pow_checked(std::uint64_t base, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = mul_checked(r, base);
    return r;
}

}  // namespace hck
