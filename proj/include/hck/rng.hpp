#pragma once

#include <cstdint>
#include <limits>

namespace hck {

// SplitMix64. Small, seedable and cheap to split: every randomized routine in the
// library takes a seed and derives independent child streams with derive().
class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's multiply-shift with rejection; exact for every bound.
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    // Exactly probability 1/b.
    bool one_in(std::uint64_t b) { return below(b) == 0; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// Seed for child stream `stream` of `seed`; distinct streams are decorrelated.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng a(seed ^ 0x6a09e667f3bcc909ULL);
    a();
    Rng b(a() + stream * 0xd1b54a32d192ed03ULL);
    return b();
}

}  // namespace hck
