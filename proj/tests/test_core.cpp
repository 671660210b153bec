#include <gtest/gtest.h>

#include <set>

#include "hck/generate.hpp"
#include "hck/hypergraph.hpp"
#include "hck/io.hpp"
#include "hck/pattern.hpp"
#include "hck/rng.hpp"

using namespace hck;

TEST(Gamma, SmallValues) {
    EXPECT_EQ(gamma(2, 4), 3u);
    EXPECT_EQ(gamma(2, 5), 3u);
    EXPECT_EQ(gamma(3, 7), 5u);
    EXPECT_EQ(gamma(3, 3), 3u);
    EXPECT_THROW(gamma(1, 4), std::invalid_argument);
}

TEST(Gamma, InverseIsLastHit) {
    for (std::size_t c = 2; c <= 4; ++c)
        for (std::size_t u = 2; u <= 6; ++u) {
            const auto k = gamma_inverse(c, u);
            EXPECT_EQ(gamma(c, k), u);
            EXPECT_GT(gamma(c, k + 1), u);
        }
    EXPECT_EQ(gamma_inverse(3, 3), 4u);
}

TEST(Hypergraph, RejectsBadEdges) {
    Hypergraph g(5, {2, 3});
    g.add_edge({0, 1});
    EXPECT_THROW(g.add_edge({0, 1}), std::invalid_argument);
    EXPECT_THROW(g.add_edge({1, 0}), std::invalid_argument);
    EXPECT_THROW(g.add_edge({0, 5}), std::invalid_argument);
    EXPECT_THROW(g.add_edge({0, 1, 2, 3}), std::invalid_argument);
    EXPECT_FALSE(g.insert({0, 1}));
    EXPECT_TRUE(g.insert({1, 2, 3}));
    EXPECT_TRUE(g.has_unsorted(std::vector<Vertex>{3, 1, 2}));
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Hypergraph, FingerprintIgnoresOrder) {
    Hypergraph a(6, {2}), b(6, {2});
    a.add_edge({0, 1});
    a.add_edge({2, 3});
    b.add_edge({2, 3});
    b.add_edge({0, 1});
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    b.add_edge({4, 5});
    EXPECT_NE(a.fingerprint(), b.fingerprint());
}

TEST(Layout, WindowStart) {
    const auto l = block_layout(2, 5);
    // partitions 3,4,0 -> window starting at 3
    EXPECT_EQ(window_start(l, std::vector<Vertex>{0, 6, 8}, 3), std::optional<std::size_t>(3));
    EXPECT_EQ(window_start(l, std::vector<Vertex>{0, 2, 4}, 3), std::optional<std::size_t>(0));
    EXPECT_FALSE(window_start(l, std::vector<Vertex>{0, 2, 6}, 3).has_value());
    EXPECT_FALSE(window_start(l, std::vector<Vertex>{0, 1, 2}, 3).has_value());
}

TEST(Io, RoundTrip) {
    Hypergraph g(6, {2, 3}, true);
    g.add_edge({1, 4}, -3);
    g.add_edge({0, 2, 5}, 7);
    const auto text = serialize(g);
    EXPECT_EQ(parse_hypergraph(text), g);
    EXPECT_EQ(serialize(parse_hypergraph(text)), text);

    const auto l = block_layout(2, 3);
    EXPECT_EQ(parse_partition(serialize(l), 6).part_of, l.part_of);

    const auto h = fig4_pattern();
    EXPECT_EQ(parse_pattern(serialize(h)), h);
}

static ParseErrc code_of(const std::string& text) {
    try {
        parse_hypergraph(text);
    } catch (const ParseError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseErrc::malformed_line;
}

TEST(Io, DistinctErrorCodes) {
    EXPECT_EQ(code_of("XX 1 n=3 sizes=2 weighted=0\n"), ParseErrc::malformed_header);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=0\ne 0 3\n"), ParseErrc::vertex_out_of_range);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=0\ne 0 1\ne 0 1\n"), ParseErrc::duplicate_edge);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=0\ne 0 1 2\n"), ParseErrc::size_not_in_profile);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=0\nf 0 1\n"), ParseErrc::malformed_line);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=0\ne 1 0\n"), ParseErrc::unsorted_edge);
    EXPECT_EQ(code_of("HG 1 n=3 sizes=2 weighted=1\ne 0 1\n"), ParseErrc::weight_mismatch);
}

TEST(Io, ErrorReportsLine) {
    try {
        parse_hypergraph("HG 1 n=3 sizes=2 weighted=0\ne 0 1\ne 1 9\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Rng, BelowIsUniform) {
    Rng r(7);
    std::vector<int> hist(6, 0);
    for (int i = 0; i < 60000; ++i) ++hist[r.below(6)];
    for (int c : hist) EXPECT_NEAR(c, 10000, 400);
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Generate, ErDensity) {
    const std::vector<std::size_t> sizes{2};
    RandomSpec spec;
    spec.b = 4;
    spec.seed = 11;
    const auto g = gen_er(150, sizes, spec);
    const double m = 150.0 * 149 / 2;
    // 11175 candidates, sd ~ 46
    EXPECT_NEAR(static_cast<double>(g.edge_count()) / m, 0.25, 0.02);
    EXPECT_EQ(gen_er(150, sizes, spec), g);
}

TEST(Generate, KpartiteCandidates) {
    const auto h = fig4_pattern();
    EXPECT_EQ(kpartite_candidate_count(3, h.slots()), 4 * 9u + 27 + 81);
    RandomSpec spec;
    spec.mu = 0.999999;
    const auto g = gen_kpartite_er(3, 5, h.slots(), spec);
    EXPECT_EQ(g.g.edge_count(), kpartite_candidate_count(3, h.slots()));
    EXPECT_TRUE(is_kpartite(g.g, g.layout));
}

TEST(Generate, CircleLayeredIsValid) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        RandomSpec spec;
        spec.seed = s;
        const auto g = gen_circle_layered(3, 7, 3, spec);
        EXPECT_TRUE(validate_circle_layered(g.g, g.layout, 3));
    }
}

TEST(Generate, PlantAddsWindows) {
    const auto l = block_layout(2, 5);
    Hypergraph g(10, {3});
    std::vector<Vertex> seq;
    const auto p = plant_hypercycle(g, l, 3, 5, &seq);
    EXPECT_EQ(p.edge_count(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(l.part_of[seq[i]], i);
}

TEST(Generate, SlotEdgesSorted) {
    const auto parts = block_layout(2, 3).parts();
    std::set<Edge> seen;
    for_each_slot_edge(parts, 0b101, [&](std::span<const Vertex> e) {
        EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
        seen.emplace(e.begin(), e.end());
    });
    EXPECT_EQ(seen.size(), 4u);
}

TEST(Pattern, Automorphisms) {
    EXPECT_EQ(automorphism_count(triangle_pattern()), 6u);
    EXPECT_EQ(automorphism_count(hypercycle_pattern(3, 5)), 10u);
    // {A,B,C} pins C against D
    EXPECT_EQ(automorphism_count(fig4_pattern()), 1u);
    EXPECT_EQ(fig4_pattern().isolated_count(), 0u);
}
