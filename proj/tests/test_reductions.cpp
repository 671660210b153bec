#include <gtest/gtest.h>

#include <set>

#include "hck/cycle.hpp"
#include "hck/generate.hpp"
#include "hck/oracle.hpp"
#include "hck/reductions.hpp"
#include "hck/weighted.hpp"

using namespace hck;

namespace {

PartiteGraph uniform_kpartite(std::size_t n, std::size_t k, std::size_t u, double mu, std::uint64_t seed) {
    std::vector<Mask> slots;
    for (Mask m = 0; m < (1u << k); ++m)
        if (popcount(m) == u) slots.push_back(m);
    RandomSpec spec;
    spec.mu = mu;
    spec.seed = seed;
    return gen_kpartite_er(n, k, slots, spec);
}

}  // namespace

TEST(CliqueCover, EverySubsetAssignedOnce) {
    for (std::size_t u = 2; u <= 3; ++u)
        for (std::size_t k = u + 1; k <= 8; ++k) {
            const auto c = clique_cover(u, k);
            EXPECT_EQ(c.width, gamma(u, k));
            std::multiset<Mask> seen;
            for (std::size_t w = 0; w < c.windows.size(); ++w)
                for (Mask m : c.assigned[w]) {
                    EXPECT_EQ(m & ~c.windows[w], 0u);
                    seen.insert(m);
                }
            std::size_t expect = 0;
            for (Mask m = 0; m < (1u << k); ++m) expect += popcount(m) == u;
            EXPECT_EQ(seen.size(), expect);
            for (Mask m : seen) EXPECT_EQ(seen.count(m), 1u);
        }
}

TEST(CliqueToCycle, ExistenceAndWeights) {
    for (std::size_t k = 4; k <= 6; ++k)
        for (std::uint64_t s = 0; s < 10; ++s) {
            auto g = uniform_kpartite(2, k, 2, 0.75, s);
            g.g = with_random_weights(g.g, -10, 10, s);
            const auto cyc = hyperclique_to_hypercycle(g.g, g.layout, 2);
            EXPECT_TRUE(validate_circle_layered(cyc.g, cyc.layout, gamma(2, k)));
            const auto cliques = brute_count_hyperclique(g.g, 2, k, &g.layout);
            const auto cycles = brute_count_hypercycles(cyc.g, gamma(2, k), k, &cyc.layout).count;
            EXPECT_EQ(cliques, cycles);
            EXPECT_EQ(brute_min_hyperclique(g.g, 2, g.layout),
                      brute_min_hypercycle(cyc.g, gamma(2, k), k, &cyc.layout));
        }
}

TEST(Lift, PreservesCounts) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        RandomSpec spec;
        spec.mu = 0.7;
        spec.seed = s;
        const auto g = gen_circle_layered(2, 5, 2, spec);
        const auto lifted = lift_uniformity(g.g, g.layout, 2, 3);
        EXPECT_TRUE(validate_circle_layered(lifted, g.layout, 3));
        EXPECT_EQ(brute_count_hypercycles(lifted, 3, 5, &g.layout).count,
                  brute_count_hypercycles(g.g, 2, 5, &g.layout).count);
    }
    RandomSpec spec;
    const auto g = gen_circle_layered(2, 6, 2, spec);
    EXPECT_THROW(lift_uniformity(g.g, g.layout, 2, 3), std::invalid_argument);
}

TEST(HkToH, MatchesKpartiteOracle) {
    const PatternGraph path(3, {{0, 1}, {1, 2}});
    for (const auto& h : {triangle_pattern(), path, fig4_pattern()})
        for (std::uint64_t s = 0; s < 4; ++s) {
            std::vector<Mask> all;
            for (Mask m = 0; m < (1u << h.k()); ++m)
                if (popcount(m) >= 2 && popcount(m) <= 4) all.push_back(m);
            RandomSpec spec;
            spec.mu = 0.5;
            spec.seed = s;
            const auto g = gen_kpartite_er(2, h.k(), all, spec);
            std::size_t calls = 0;
            const auto r = hk_to_h(h, g, [&](const PatternGraph& hT, const PartiteGraph& gT) {
                ++calls;
                return brute_count_pattern(hT, gT.g, PatternMode::h_partite, &gT.layout);
            });
            EXPECT_EQ(r.count, brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout));
            EXPECT_EQ(r.calls, calls);
            EXPECT_LE(r.calls, r.selections);
        }
}
