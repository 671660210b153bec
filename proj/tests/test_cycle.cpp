#include <gtest/gtest.h>

#include <cmath>

#include "hck/cycle.hpp"
#include "hck/generate.hpp"
#include "hck/matrix.hpp"
#include "hck/oracle.hpp"

using namespace hck;

namespace {

PartiteGraph layered(std::size_t n, std::size_t k, std::size_t u, double mu, std::uint64_t seed) {
    RandomSpec spec;
    spec.mu = mu;
    spec.seed = seed;
    return gen_circle_layered(n, k, u, spec);
}

CountMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t bound, Rng& rng) {
    CountMatrix m(r, c);
    for (auto& x : m.data()) x = rng.below(bound);
    return m;
}

CountMatrix schoolbook(const CountMatrix& a, const CountMatrix& b) {
    CountMatrix out(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t t = 0; t < a.cols(); ++t) out(i, j) += a(i, t) * b(t, j);
    return out;
}

}  // namespace

TEST(Matmul, BackendsAgree) {
    Rng rng(3);
    for (std::size_t trial = 0; trial < 20; ++trial) {
        const std::size_t r = 1 + rng.below(70), m = 1 + rng.below(70), c = 1 + rng.below(70);
        const auto a = random_matrix(r, m, 50, rng), b = random_matrix(m, c, 50, rng);
        const auto ref = schoolbook(a, b);
        EXPECT_EQ(matmul(a, b, MatmulBackend::naive), ref);
        EXPECT_EQ(matmul(a, b, MatmulBackend::strassen), ref);
    }
}

TEST(Matmul, OverflowDetected) {
    CountMatrix a(1, 2, std::uint64_t{1} << 40), b(2, 1, std::uint64_t{1} << 30);
    EXPECT_THROW(matmul(a, b), OverflowError);
    CountMatrix c(1, 2, std::uint64_t{1} << 31), d(2, 1, std::uint64_t{1} << 31);
    EXPECT_EQ(matmul(c, d)(0, 0), std::uint64_t{1} << 63);
    EXPECT_THROW(matmul(CountMatrix(2, 3), CountMatrix(2, 3)), std::invalid_argument);
}

TEST(Minplus, SmallCase) {
    WeightMatrix a(2, 2, kInfWeight), b(2, 2, kInfWeight);
    a(0, 0) = 1;
    a(0, 1) = -4;
    b(1, 1) = 2;
    b(0, 1) = 10;
    const auto p = minplus(a, b);
    EXPECT_EQ(p(0, 1), -2);
    EXPECT_EQ(p(0, 0), kInfWeight);
    EXPECT_EQ(p(1, 1), kInfWeight);
}

TEST(TrianglePartitions, NoNarrowWindowCoversAll) {
    for (std::size_t k = 3; k <= 12; ++k) {
        const auto tp = triangle_partitions(k);
        EXPECT_EQ(tp.delta, (k + 2) / 3);
        for (std::size_t u = 2; gamma_inverse(3, u) < k && u <= k; ++u)
            for (std::size_t s = 0; s < k; ++s) {
                int inside = 0;
                for (auto p : tp.pos) inside += (p + k - s) % k < u;
                EXPECT_LT(inside, 3) << "k=" << k << " u=" << u << " s=" << s;
            }
    }
}

TEST(ChooseAlgo, Regimes) {
    EXPECT_EQ(choose_algo(3, 4), CycleAlgo::brute);
    EXPECT_EQ(choose_algo(3, 5), CycleAlgo::clr);
    EXPECT_EQ(choose_algo(4, 6), CycleAlgo::triangle);
    EXPECT_EQ(choose_algo(4, 7), CycleAlgo::clr);
    EXPECT_EQ(parse_cycle_algo("clr"), CycleAlgo::clr);
    EXPECT_THROW(parse_cycle_algo("fast"), std::invalid_argument);
}

TEST(Layered, AlgorithmsMatchOracle) {
    const std::pair<std::size_t, std::size_t> cases[] = {{2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 6}, {4, 7}, {2, 6}};
    for (auto [u, k] : cases)
        for (std::uint64_t s = 0; s < 8; ++s) {
            const auto g = layered(3, k, u, 0.3 + 0.08 * static_cast<double>(s), s);
            const auto truth = brute_count_hypercycles(g.g, u, k, &g.layout).count;
            EXPECT_EQ(count_layered_enum(g.g, g.layout, u), truth);
            if (triangle_applies(u, k)) {
                EXPECT_EQ(count_via_triangles(g.g, g.layout, u), truth) << u << "," << k;
                LayeredOptions st;
                st.backend = MatmulBackend::strassen;
                EXPECT_EQ(count_via_triangles(g.g, g.layout, u, st), truth);
            }
            if (clr_applies(u, k)) EXPECT_EQ(count_via_clr(g.g, g.layout, u), truth) << u << "," << k;
        }
}

TEST(Layered, UnequalPartSizes) {
    CircleLayout l;
    l.k = 5;
    l.part_of = {0, 0, 0, 1, 1, 2, 2, 2, 3, 4, 4};
    const auto parts = l.parts();
    for (std::uint64_t s = 0; s < 6; ++s) {
        Rng rng(s);
        Hypergraph g(l.part_of.size(), {2});
        for (Mask m : window_masks(5, 2))
            for_each_slot_edge(parts, m, [&](std::span<const Vertex> e) {
                if (rng.bernoulli(0.7)) g.add_edge(Edge(e.begin(), e.end()));
            });
        const auto truth = brute_count_hypercycles(g, 2, 5, &l).count;
        EXPECT_EQ(count_via_clr(g, l, 2), truth);
        EXPECT_EQ(count_via_triangles(g, l, 2), truth);
    }
}

TEST(Layered, DetectModeIsZeroOne) {
    const auto g = layered(3, 5, 2, 0.9, 1);
    LayeredOptions opt;
    opt.mode = ReachMode::detect;
    EXPECT_EQ(count_via_clr(g.g, g.layout, 2, opt), 1u);
    EXPECT_EQ(count_via_triangles(g.g, g.layout, 2, opt), 1u);
    const auto e = layered(3, 5, 2, 1e-9, 1);
    EXPECT_EQ(count_via_clr(e.g, e.layout, 2, opt), 0u);
}

TEST(Layered, ClrPieces) {
    const std::size_t u = 3, k = 7;
    const auto g = layered(2, k, u, 0.6, 4);
    OpCounters c;
    LayeredOptions opt;
    opt.counters = &c;
    auto reach = clr_base(g.g, g.layout, u, opt);
    EXPECT_EQ(reach.k, 2 * u - 1);
    for (std::size_t j = 2 * u; j <= k; ++j) reach = eclr_extend(g.g, g.layout, u, j, reach, opt);
    EXPECT_EQ(close_cycle(g.g, g.layout, u, reach), brute_count_hypercycles(g.g, u, k, &g.layout).count);
    EXPECT_EQ(c.eclr_extends, k - 2 * u + 1);
    EXPECT_THROW(eclr_extend(g.g, g.layout, u, k, clr_base(g.g, g.layout, u), opt), std::invalid_argument);
}

TEST(Counters, TriangleBuilds) {
    for (std::size_t n = 2; n <= 3; ++n) {
        const auto g = layered(n, 6, 4, 0.5, n);
        OpCounters c;
        LayeredOptions opt;
        opt.counters = &c;
        count_via_triangles(g.g, g.layout, 4, opt);
        std::uint64_t expect = 1;
        for (int i = 0; i < 3; ++i) expect *= n;
        EXPECT_EQ(c.tripartite_builds, expect);
    }
}

TEST(ColorCoding, TrialsFormula) {
    EXPECT_EQ(color_coding_trials(4, 0.05), static_cast<std::size_t>(std::ceil(256 * std::log(20.0))));
    EXPECT_THROW(color_coding_trials(4, 0.0), std::invalid_argument);
}

TEST(ColorCoding, KeepsOnlyConsecutiveColours) {
    Hypergraph g(10, {3});
    for_each_subset(10, 3, [&](std::span<const Vertex> e) { g.add_edge(Edge(e.begin(), e.end())); });
    const auto pg = color_code(g, 3, 5, 9);
    EXPECT_TRUE(validate_circle_layered(pg.g, pg.layout, 3));
}

TEST(Detect, NoFalsePositives) {
    // free 3-uniform graph without a tight 5-cycle: a star of edges around vertex 0
    Hypergraph g(9, {3});
    for (Vertex a = 1; a < 8; a += 2) g.add_edge({0, a, static_cast<Vertex>(a + 1)});
    ASSERT_EQ(brute_count_hypercycles(g, 3, 5).count, 0u);
    const auto r = detect_hypercycle(g, 3, 5, 0.5, 1);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.trials_run, r.trials_planned);
}

TEST(Detect, FindsPlantedCycle) {
    const auto l = block_layout(2, 5);
    std::vector<Vertex> seq;
    const auto g = plant_hypercycle(Hypergraph(10, {3}), l, 3, 2, &seq);
    const auto r = detect_hypercycle(g, 3, 5, 0.01, 6);
    EXPECT_TRUE(r.found);
    EXPECT_EQ(r.algo, CycleAlgo::clr);
}
