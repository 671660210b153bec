#include <gtest/gtest.h>

#include "hck/generate.hpp"
#include "hck/oracle.hpp"
#include "hck/weighted.hpp"

using namespace hck;

namespace {

PartiteGraph weighted_layered(std::size_t n, std::size_t k, std::size_t u, std::uint64_t seed) {
    RandomSpec spec;
    spec.mu = 0.6;
    spec.seed = seed;
    auto g = gen_circle_layered(n, k, u, spec);
    g.g = with_random_weights(g.g, -10, 10, derive_seed(seed, 1));
    return g;
}

}  // namespace

TEST(Weighted, DpMatchesOracle) {
    const std::pair<std::size_t, std::size_t> cases[] = {{2, 3}, {2, 4}, {2, 6}, {3, 5}, {3, 6}, {4, 7}};
    for (auto [u, k] : cases)
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto g = weighted_layered(3, k, u, s);
            const auto truth = brute_min_hypercycle(g.g, u, k, &g.layout);
            EXPECT_EQ(min_layered_dp(g.g, g.layout, u), truth) << u << "," << k << " seed " << s;
            EXPECT_EQ(min_layered_enum(g.g, g.layout, u), truth);
        }
}

TEST(Weighted, ExtendCounts) {
    const auto g = weighted_layered(2, 7, 3, 1);
    OpCounters c;
    auto r = wclr_base(g.g, g.layout, 3, &c);
    for (std::size_t j = 6; j <= 7; ++j) r = weclr_extend(g.g, g.layout, 3, j, r, &c);
    EXPECT_EQ(wclose_cycle(g.g, g.layout, 3, r), brute_min_hypercycle(g.g, 3, 7, &g.layout));
    EXPECT_EQ(c.eclr_extends, 2u);
}

TEST(Weighted, NaiveMatchesFreeOracle) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        RandomSpec spec;
        spec.b = 2;
        spec.seed = s;
        const std::vector<std::size_t> sizes{3};
        const auto g = with_random_weights(gen_er(7, sizes, spec), -10, 10, s);
        EXPECT_EQ(min_naive(g, 3, 4), brute_min_hypercycle(g, 3, 4));
        EXPECT_EQ(min_naive(g, 3, 5), brute_min_hypercycle(g, 3, 5));
    }
}

TEST(Weighted, NoCycleIsInfinite) {
    const auto g = weighted_layered(2, 5, 3, 3);
    Hypergraph empty(g.g.n(), {3}, true);
    EXPECT_EQ(min_layered_dp(empty, g.layout, 3), kInfWeight);
}

TEST(Weighted, OverflowIsReported) {
    const auto l = block_layout(1, 3);
    Hypergraph g(3, {2}, true);
    g.add_edge({0, 1}, std::numeric_limits<Weight>::max() - 1);
    g.add_edge({1, 2}, std::numeric_limits<Weight>::max() - 1);
    g.add_edge({0, 2}, 5);
    EXPECT_THROW(min_layered_dp(g, l, 2), OverflowError);
}

TEST(Weighted, ColorCodedNeverBelowTruth) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        RandomSpec spec;
        spec.seed = s;
        const std::vector<std::size_t> sizes{2};
        const auto g = with_random_weights(gen_er(6, sizes, spec), -10, 10, s);
        const auto truth = brute_min_hypercycle(g, 2, 4);
        const auto r = min_hypercycle(g, 2, 4, 0.01, s, MinAlgo::color_coded);
        EXPECT_TRUE(r.color_coded);
        EXPECT_GE(r.weight, truth);
        EXPECT_EQ(min_hypercycle(g, 2, 4, 0.01, s, MinAlgo::naive).weight, truth);
    }
}
