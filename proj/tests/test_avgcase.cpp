#include <gtest/gtest.h>

#include "hck/avgcase.hpp"
#include "hck/field.hpp"
#include "hck/oracle.hpp"

#include <set>

using namespace hck;

namespace {

PatternGraph mixed4() { return PatternGraph(4, {{0, 1}, {1, 2, 3}, {0, 3}}); }

PartiteGraph random_on_slots(const PatternGraph& h, std::size_t n, std::size_t b, std::uint64_t seed) {
    RandomSpec spec;
    spec.b = b;
    spec.seed = seed;
    return gen_kpartite_er(n, h.k(), h.slots(), spec);
}

LabeledFragment fragment(const PatternGraph& h, FragmentKey key) {
    LabeledFragment f{key.labels, {}};
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        if (key.edges >> i & 1) f.edges.push_back(h.edges()[i]);
    return f;
}

}  // namespace

TEST(Field, PrimeRange) {
    for (std::size_t n = 2; n <= 8; ++n)
        for (std::size_t k = 2; k <= 5; ++k) {
            const auto pm = choose_prime(n, k);
            std::uint64_t nk = 1;
            for (std::size_t i = 0; i < k; ++i) nk *= n;
            EXPECT_TRUE(is_prime(pm.p));
            EXPECT_GE(pm.p, 2 * nk);
            EXPECT_LE(pm.p, nk * nk);
        }
    EXPECT_THROW(choose_prime(2, 1), std::invalid_argument);
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));
    EXPECT_EQ(powmod(3, 200, 1000000007ULL), 136318165u);
}

TEST(Gldp, IndicatorRoundTrip) {
    const auto h = fig4_pattern();
    const auto g = random_on_slots(h, 3, 2, 5);
    const auto d = make_gldp(h, g.layout);
    const auto x = gldp_indicator(d, g.g);
    EXPECT_EQ(gldp_graph(d, x), g.g);
    EXPECT_EQ(d.variables, kpartite_candidate_count(3, h.slots()));
}

TEST(Gldp, MatchesBruteCount) {
    for (const auto& h : {triangle_pattern(), mixed4(), fig4_pattern()})
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto g = random_on_slots(h, 3, 2, s);
            const auto d = make_gldp(h, g.layout);
            const auto x = gldp_indicator(d, g.g);
            EXPECT_EQ(eval_gldp(d, x), brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout) % d.modulus.p);
        }
}

TEST(Gldp, OneVariablePerGroup) {
    const auto h = mixed4();
    const auto g = random_on_slots(h, 2, 2, 1);
    const auto d = make_gldp(h, g.layout);
    std::size_t monomials = 0;
    MonomialHook hook = [&](std::span<const std::size_t> vars) {
        ++monomials;
        ASSERT_EQ(vars.size(), d.degree());
        for (std::size_t j = 0; j < vars.size(); ++j) {
            EXPECT_GE(vars[j], d.offset[j]);
            EXPECT_LT(vars[j], d.offset[j + 1]);
        }
    };
    eval_gldp(d, gldp_indicator(d, g.g), &hook);
    EXPECT_EQ(monomials, 16u);
}

TEST(Corrector, PerfectOracleIsExact) {
    const auto h = triangle_pattern();
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto g = random_on_slots(h, 3, 2, s);
        const auto d = make_gldp(h, g.layout);
        UhOracle oracle = [](const PatternGraph& hh, const PartiteGraph& gg) {
            return brute_count_pattern(hh, gg.g, PatternMode::h_partite, &gg.layout);
        };
        CorrectorOptions opt;
        opt.seed = s;
        const auto r = correct_worst_case(d, gldp_indicator(d, g.g), oracle, 0.5, opt);
        ASSERT_TRUE(r.value.has_value()) << r.failure;
        EXPECT_TRUE(r.control_ok);
        EXPECT_EQ(*r.value, brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout));
    }
}

TEST(Corrector, QueriesAreRandomized) {
    const auto h = triangle_pattern();
    const auto g = random_on_slots(h, 3, 2, 0);
    const auto d = make_gldp(h, g.layout);
    std::vector<Groups> log;
    CorrectorOptions opt;
    opt.query_log = &log;
    opt.max_repetitions = 3;
    UhOracle oracle = [](const PatternGraph& hh, const PartiteGraph& gg) {
        return brute_count_pattern(hh, gg.g, PatternMode::h_partite, &gg.layout);
    };
    const auto r = correct_worst_case(d, gldp_indicator(d, g.g), oracle, 0.5, opt);
    EXPECT_EQ(r.queries, log.size());
    EXPECT_EQ(log.size() % 8, 0u);
    std::set<Groups> distinct(log.begin(), log.end());
    EXPECT_GT(distinct.size(), log.size() / 2);
}

TEST(Corrector, BrokenOracleFailsControl) {
    const auto h = triangle_pattern();
    const auto g = random_on_slots(h, 3, 2, 0);
    const auto d = make_gldp(h, g.layout);
    UhOracle constant = [](const PatternGraph&, const PartiteGraph&) -> std::uint64_t { return 7; };
    const auto r = correct_worst_case(d, gldp_indicator(d, g.g), constant, 0.5, CorrectorOptions{});
    EXPECT_FALSE(r.value.has_value());
    EXPECT_FALSE(r.control_ok);
    EXPECT_FALSE(r.failure.empty());
}

TEST(Corrector, ThrowingOracleDiscardsRepetition) {
    const auto h = triangle_pattern();
    const auto g = random_on_slots(h, 2, 2, 2);
    const auto d = make_gldp(h, g.layout);
    std::size_t calls = 0;
    UhOracle flaky = [&](const PatternGraph& hh, const PartiteGraph& gg) -> std::uint64_t {
        if (++calls % 37 == 0) throw std::runtime_error("flaky");
        return brute_count_pattern(hh, gg.g, PatternMode::h_partite, &gg.layout);
    };
    const auto r = correct_worst_case(d, gldp_indicator(d, g.g), flaky, 0.5, CorrectorOptions{});
    ASSERT_TRUE(r.value.has_value());
    EXPECT_EQ(*r.value, brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout));
}

TEST(SgFamily, MembersPartitionCandidates) {
    const auto h = mixed4();
    const auto g = random_on_slots(h, 2, 3, 4);
    const auto fam = build_sg(g, h.slots(), 3, 9);
    EXPECT_EQ(fam.member_count(), 27u);
    std::vector<std::uint8_t> ones(fam.slots.size(), 1);
    EXPECT_EQ(sg_member(fam, ones).g.edge_count(), g.g.edge_count());
    // for each slot, members over its b labels cover every candidate exactly once
    for (std::size_t j = 0; j < fam.slots.size(); ++j) {
        std::size_t total = 0;
        for (std::uint8_t l = 1; l <= 3; ++l) {
            std::vector<std::uint8_t> ell(fam.slots.size(), 1);
            ell[j] = l;
            const auto member = sg_member(fam, ell);
            for (const auto& e : member.g.edges())
                total += slot_of(g.layout, e) == std::optional<Mask>(fam.slots[j]);
        }
        EXPECT_EQ(total, fam.candidates[j].size());
    }
}

TEST(Labeled, BaseCasesMatchBrute) {
    const auto h = mixed4();
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto g = random_on_slots(h, 3, 2, s);
        LabeledCountTable t;
        count_base_cases(g, h, t);
        for (const auto& [key, val] : t.entries) EXPECT_EQ(val, brute_count_labeled(fragment(h, key), g.g, g.layout));
    }
}

TEST(Inclusion, IdentityHoldsExactly) {
    for (const auto& h : {triangle_pattern(), mixed4()})
        for (std::size_t b = 2; b <= 3; ++b)
            for (std::uint64_t s = 0; s < 3; ++s) {
                const auto g = random_on_slots(h, 3, b, s);
                const auto fam = build_sg(g, h.slots(), b, s);
                std::vector<std::uint64_t> members;
                for (std::uint64_t i = 0; i < fam.member_count(); ++i) {
                    const auto m = sg_member(fam, fam.member_labels(i));
                    members.push_back(brute_count_pattern(h, m.g, PatternMode::k_partite, &m.layout));
                }
                const InclusionContext ctx(h, fam.slots, b, 3);
                auto c = [&](FragmentKey key) { return brute_count_labeled(fragment(h, key), g.g, g.layout); };
                const Mask all = (1u << h.k()) - 1;
                for (std::uint32_t f = 0; f < (1u << h.edge_count()); ++f) {
                    std::vector<Mask> fs;
                    for (std::size_t i = 0; i < h.edge_count(); ++i)
                        if (f >> i & 1) fs.push_back(h.edges()[i]);
                    const auto lhs = sg_label_one_sum(fam, members, fs);
                    EXPECT_EQ(inclusion_rhs(ctx, FragmentKey{all, f}, c), static_cast<__int128>(lhs));
                }
            }
}

TEST(Labeled, ViaErCallsAndFull) {
    const auto h = mixed4();
    const auto g = random_on_slots(h, 3, 2, 8);
    KpartiteCounter counter = [](const PatternGraph& hh, const PartiteGraph& gg) {
        return brute_count_pattern(hh, gg.g, PatternMode::k_partite, &gg.layout);
    };
    const auto r = count_labeled_via_er(g, h, counter, 3, 1);
    EXPECT_EQ(r.calls, 27u);
    EXPECT_EQ(r.full, brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout));
    for (const auto& [key, val] : r.table.entries)
        EXPECT_EQ(val, brute_count_labeled(fragment(h, key), g.g, g.layout));
}

TEST(ErOracle, KpartiteFromEr) {
    for (const auto& h : {triangle_pattern(), mixed4()})
        for (std::uint64_t s = 0; s < 4; ++s) {
            const auto g = random_on_slots(h, 3, 2, s);
            const auto r = kpartite_from_er(g, h, make_brute_er_oracle(), 2, s);
            EXPECT_EQ(r.calls, std::size_t{1} << h.k());
            EXPECT_EQ(r.count, brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout));
        }
}

TEST(ErOracle, BruteMatchesFreeCount) {
    const auto h = mixed4();
    RandomSpec spec;
    spec.seed = 3;
    const auto g = gen_er(9, h.sizes(), spec);
    const auto er = make_brute_er_oracle();
    std::vector<bool> keep(9, true);
    EXPECT_EQ(er(h, g, keep), brute_count_pattern(h, g, PatternMode::free_er));
    keep[4] = keep[7] = false;
    std::vector<std::size_t> sizes = g.sizes();
    Hypergraph sub(9, sizes);
    for (const auto& e : g.edges())
        if (std::none_of(e.begin(), e.end(), [](Vertex v) { return v == 4 || v == 7; })) sub.add_edge(e);
    EXPECT_EQ(er(h, g, keep), brute_count_pattern(h, sub, PatternMode::free_er));
}

TEST(ErOracle, CorruptRate) {
    const auto h = triangle_pattern();
    RandomSpec spec;
    const std::vector<std::size_t> sizes{2};
    const auto g = gen_er(6, sizes, spec);
    const auto inner = make_brute_er_oracle();
    const auto bad = make_corrupt_er_oracle(inner, 0.1, 4);
    std::vector<bool> keep(6, true);
    const auto truth = inner(h, g, keep);
    int wrong = 0;
    for (int i = 0; i < 5000; ++i) wrong += bad(h, g, keep) != truth;
    // 500 expected, sd ~ 21
    EXPECT_NEAR(wrong, 500, 90);
}

TEST(Pipeline, TriangleExact) {
    const auto h = triangle_pattern();
    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto g = random_on_slots(h, 3, 2, s);
        const auto r = wc2ac_pipeline(g, h, make_brute_er_oracle(), 2, 0.05, s);
        ASSERT_TRUE(r.count.has_value()) << r.failure;
        EXPECT_EQ(*r.count, brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout));
        EXPECT_EQ(r.stats.kpartite_calls, r.stats.uh_queries * 8);
        // a perfect oracle settles every vote after two attempts
        EXPECT_EQ(r.stats.kpartite_attempts, 2 * r.stats.kpartite_calls);
        EXPECT_EQ(r.stats.er_calls, r.stats.kpartite_attempts * 8);
    }
}

TEST(Pipeline, SurvivesCorruptedCalls) {
    const auto h = triangle_pattern();
    int ok = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto g = random_on_slots(h, 3, 2, s);
        const auto er = make_corrupt_er_oracle(make_brute_er_oracle(), 0.01, s);
        const auto r = wc2ac_pipeline(g, h, er, 2, 0.05, s);
        ok += r.count && *r.count == brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout);
    }
    EXPECT_GE(ok, 9);
}
