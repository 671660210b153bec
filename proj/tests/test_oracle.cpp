#include <gtest/gtest.h>

#include "hck/database.hpp"
#include "hck/generate.hpp"
#include "hck/oracle.hpp"
#include "hck/pattern.hpp"

using namespace hck;

namespace {

Hypergraph complete(std::size_t n, std::size_t u) {
    Hypergraph g(n, {u});
    for_each_subset(n, u, [&](std::span<const Vertex> e) { g.add_edge(Edge(e.begin(), e.end())); });
    return g;
}

std::uint64_t falling(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r *= n - i;
    return r;
}

}  // namespace

TEST(BruteCycles, CompleteGraphs) {
    // k-cycles of K_n as sequences up to rotation and reflection
    for (std::size_t n = 4; n <= 7; ++n)
        for (std::size_t k = 3; k <= n; ++k)
            EXPECT_EQ(brute_count_hypercycles(complete(n, 2), 2, k).count, falling(n, k) / (2 * k)) << n << " " << k;
    EXPECT_EQ(brute_count_hypercycles(complete(6, 3), 3, 5).count, falling(6, 5) / 10);
    EXPECT_EQ(brute_count_hypercycles(complete(5, 3), 3, 3).count, 10u);
}

TEST(BruteCycles, LayeredComplete) {
    for (std::size_t u = 2; u <= 3; ++u)
        for (std::size_t k = u + 1; k <= 6; ++k) {
            RandomSpec spec;
            spec.mu = 0.9999999;
            const auto g = gen_circle_layered(2, k, u, spec);
            const auto r = brute_count_hypercycles(g.g, u, k, &g.layout);
            EXPECT_EQ(r.count, std::uint64_t{1} << k);
            EXPECT_EQ(r.backward_regime, k % u == 0);
        }
}

TEST(BruteCycles, EmptyAndMin) {
    Hypergraph g(6, {3}, true);
    EXPECT_EQ(brute_count_hypercycles(g, 3, 5).count, 0u);
    EXPECT_EQ(brute_min_hypercycle(g, 3, 5), kInfWeight);
    // Single tight 4-cycle 0-1-2-3 with windows 012,123,230,301
    g.add_edge({0, 1, 2}, 1);
    g.add_edge({1, 2, 3}, 2);
    g.add_edge({0, 2, 3}, 3);
    g.add_edge({0, 1, 3}, -10);
    EXPECT_EQ(brute_count_hypercycles(g, 3, 4).count, 3u);
    EXPECT_EQ(brute_min_hypercycle(g, 3, 4), -4);
}

TEST(BrutePattern, TriangleModes) {
    const auto h = triangle_pattern();
    EXPECT_EQ(brute_count_pattern(h, complete(5, 2), PatternMode::free_er), 10u);
    RandomSpec spec;
    spec.mu = 0.9999999;
    const auto g = gen_kpartite_er(2, 3, h.slots(), spec);
    EXPECT_EQ(brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout), 8u);
    EXPECT_EQ(brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout), 8u);
}

TEST(BrutePattern, PathInKpartite) {
    // path a-b-c: in k-partite mode each copy is counted once whatever the assignment
    const PatternGraph path(3, {{0, 1}, {1, 2}});
    const auto l = block_layout(1, 3);
    Hypergraph g(3, {2});
    g.add_edge({0, 2});
    g.add_edge({1, 2});
    EXPECT_EQ(brute_count_pattern(path, g, PatternMode::k_partite, &l), 1u);
    EXPECT_EQ(brute_count_pattern(path, g, PatternMode::h_partite, &l), 0u);
}

TEST(BrutePattern, FreeMatchesSubsetCount) {
    // independent count: 3-vertex subsets whose three pairs are edges
    const auto h = triangle_pattern();
    for (std::uint64_t s = 0; s < 10; ++s) {
        RandomSpec spec;
        spec.seed = s;
        const std::vector<std::size_t> sizes{2};
        const auto g = gen_er(8, sizes, spec);
        std::uint64_t direct = 0;
        for_each_subset(8, 3, [&](std::span<const Vertex> t) {
            const Vertex a = t[0], b = t[1], c = t[2];
            direct += g.has_edge(Edge{a, b}) && g.has_edge(Edge{b, c}) && g.has_edge(Edge{a, c});
        });
        EXPECT_EQ(brute_count_pattern(h, g, PatternMode::free_er), direct);
    }
}

TEST(BruteLabeled, ProductOfFreeParts) {
    const auto l = block_layout(3, 3);
    Hypergraph g(9, {2});
    g.add_edge({0, 3});
    g.add_edge({1, 4});
    LabeledFragment f{0b111, {0b011}};
    EXPECT_EQ(brute_count_labeled(f, g, l), 2u * 3);
    EXPECT_EQ(brute_count_labeled(LabeledFragment{0b101, {}}, g, l), 9u);
}

TEST(BruteClique, Counts) {
    EXPECT_EQ(brute_count_hyperclique(complete(6, 3), 3, 4), 15u);
    EXPECT_EQ(brute_count_hyperclique(complete(6, 2), 2, 3), 20u);
    const auto l = block_layout(2, 3);
    EXPECT_EQ(brute_count_hyperclique(complete(6, 2), 2, 3, &l), 8u);
}

TEST(BruteScq, SingleAssignment) {
    const auto db = parse_database("DB 1 n=3\nrel R1 arity=2\nf 1 2\nrel R2 arity=1\nf 2\n");
    const auto q = parse_query("Q Q(a,b) <- R1(a,b); R2(b)");
    EXPECT_EQ(brute_scq(db, q), 1u);
    Database empty = db;
    empty.relations[1].facts.clear();
    empty.relations[1].reindex();
    EXPECT_EQ(brute_scq(empty, q), 0u);
}

TEST(BruteScq, HeadOnlyMultiplies) {
    const auto db = parse_database("DB 1 n=4\nrel R arity=1\nf 0\nf 3\n");
    const auto q = parse_query("Q Q(a,z) <- R(a)");
    EXPECT_EQ(q.head_only().size(), 1u);
    EXPECT_EQ(brute_scq(db, q), 8u);
}
