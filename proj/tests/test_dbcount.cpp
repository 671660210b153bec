#include <gtest/gtest.h>

#include "hck/dbcount.hpp"
#include "hck/oracle.hpp"

using namespace hck;

namespace {

Query random_query(Rng& rng, std::vector<RelationSchema>& schemas) {
    const std::size_t atoms = 1 + rng.below(3);
    const std::size_t nvars = 2 + rng.below(3);
    Query q;
    q.name = "Q";
    for (std::size_t v = 0; v < nvars; ++v) q.var_names.push_back("x" + std::to_string(v));
    std::vector<bool> used(nvars, false);
    for (std::size_t a = 0; a < atoms; ++a) {
        Atom atom;
        atom.relation = "R" + std::to_string(a);
        const std::size_t ar = 1 + rng.below(3);
        for (std::size_t i = 0; i < ar; ++i) {
            atom.vars.push_back(rng.below(nvars));
            used[atom.vars.back()] = true;
        }
        schemas.push_back({atom.relation, ar});
        q.atoms.push_back(atom);
    }
    for (std::size_t v = 0; v < nvars; ++v) q.head.push_back(v);
    return q;
}

}  // namespace

TEST(Database, ParseRoundTrip) {
    const std::string text = "DB 1 n=3\nrel R1 arity=2\nf 1 2\nf 0 0\nrel R2 arity=1\nf 2\n";
    const auto db = parse_database(text);
    EXPECT_EQ(parse_database(serialize(db)).relations.size(), 2u);
    EXPECT_TRUE(db.find("R1")->contains(Fact{0, 0}));
    EXPECT_THROW(parse_database("DB 1 n=3\nrel R1 arity=2\nf 1 3\n"), ParseError);
    EXPECT_THROW(parse_database("DB 1 n=3\nrel R1 arity=2\nf 1\n"), ParseError);
    EXPECT_THROW(parse_database("DB 1 n=3\nrel R1 arity=1\nf 1\nf 1\n"), ParseError);
}

TEST(Query, RejectsSelfJoin) {
    EXPECT_THROW(parse_query("Q Q(a,b,c) <- R(a,b); R(b,c)"), ParseError);
    const auto db = parse_database("DB 1 n=3\nrel R arity=2\nf 1 2\n");
    Query q = parse_query("Q Q(a,b,c) <- R(a,b); S(b,c)");
    q.atoms[1].relation = "R";
    EXPECT_THROW(q.validate(&db), InvariantError);
    EXPECT_THROW(eval_scq_polynomial(db, q), InvariantError);
    EXPECT_EQ(serialize(parse_query("Q Q(a,b) <- R(a,b)")), "Q Q(a,b) <- R(a,b)");
}

TEST(GenDb, CandidatesAndDensity) {
    const std::vector<RelationSchema> schemas{{"A", 2}, {"B", 3}};
    const auto db = gen_random_db(schemas, 22, {0.3, 0.999999}, 5);
    EXPECT_EQ(db.find("B")->facts.size(), 22u * 22 * 22);
    const auto big = gen_random_db({{"C", 3}}, 22, {0.4}, 1);
    // 10648 candidates, sd ~ 0.005
    EXPECT_NEAR(static_cast<double>(big.relations[0].facts.size()) / 10648.0, 0.4, 0.02);
    EXPECT_EQ(serialize(gen_random_db(schemas, 5, {0.3, 0.5}, 7)), serialize(gen_random_db(schemas, 5, {0.3, 0.5}, 7)));
    EXPECT_THROW(gen_random_db({{"Z", 0}}, 3, {0.5}, 1), std::invalid_argument);
}

TEST(ScqPolynomial, SpecExample) {
    const auto db = parse_database("DB 1 n=3\nrel R1 arity=2\nf 1 2\nrel R2 arity=1\nf 2\n");
    EXPECT_EQ(eval_scq_polynomial(db, parse_query("Q Q(a,b) <- R1(a,b); R2(b)")), 1u);
}

TEST(ScqPolynomial, MatchesBrute) {
    Rng rng(12);
    for (int t = 0; t < 40; ++t) {
        std::vector<RelationSchema> schemas;
        const auto q = random_query(rng, schemas);
        const auto db = gen_random_db(schemas, 5, std::vector<double>(schemas.size(), 0.5), rng());
        const auto d = make_scq(db, q);
        const auto x = scq_indicator(d, db);
        std::size_t monomials = 0;
        MonomialHook hook = [&](std::span<const std::size_t> vars) {
            ++monomials;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                EXPECT_GE(vars[j], d.offset[j]);
                EXPECT_LT(vars[j], d.offset[j + 1]);
            }
        };
        EXPECT_EQ(eval_scq_polynomial(d, x, &hook), brute_scq(db, q) % d.modulus.p);
        EXPECT_GT(monomials, 0u);
        EXPECT_EQ(scq_database(d, x).relations.size(), q.atoms.size());
    }
}

TEST(ScqViaUscq, PerfectOracle) {
    Rng rng(4);
    for (int t = 0; t < 6; ++t) {
        std::vector<RelationSchema> schemas;
        const auto q = random_query(rng, schemas);
        const auto db = gen_random_db(schemas, 4, std::vector<double>(schemas.size(), 0.4), rng());
        const auto r = scq_via_uscq(db, q, make_brute_uscq_oracle(), 0.05, t);
        ASSERT_TRUE(r.value.has_value()) << r.failure;
        EXPECT_EQ(*r.value, brute_scq(db, q));
    }
}

TEST(ScqViaUscq, SingleAtomDirectFormula) {
    const auto db = parse_database("DB 1 n=4\nrel R arity=2\nf 0 1\nf 2 3\nf 3 3\n");
    const auto q = parse_query("Q Q(a,b,z) <- R(a,b)");
    const auto r = scq_via_uscq(db, q, make_brute_uscq_oracle(), 0.05, 1);
    ASSERT_TRUE(r.value.has_value());
    EXPECT_EQ(*r.value, 3u * 4);
}

TEST(ScqViaUscq, CorruptedOracleMostlyRight) {
    const auto db = parse_database("DB 1 n=3\nrel R1 arity=2\nf 0 1\nf 1 2\nf 2 2\nrel R2 arity=1\nf 2\n");
    const auto q = parse_query("Q Q(a,b) <- R1(a,b); R2(b)");
    int ok = 0;
    for (int t = 0; t < 30; ++t) {
        const auto r =
            scq_via_uscq(db, q, make_corrupt_uscq_oracle(make_brute_uscq_oracle(), 0.01, t), 0.05, 100 + t);
        ok += r.value && *r.value == brute_scq(db, q);
    }
    EXPECT_GE(ok, 27);
}

TEST(PatternQuery, MixedPatternMatchesPatternCount) {
    const auto h = fig4_pattern();
    const auto q = pattern_query(h);
    EXPECT_EQ(q.atoms.size(), 6u);
    for (std::uint64_t s = 0; s < 4; ++s) {
        RandomSpec spec;
        spec.mu = 0.6;
        spec.seed = s;
        const auto g = gen_kpartite_er(2, 5, h.slots(), spec);
        const auto db = pattern_database(g, h);
        EXPECT_EQ(brute_scq(db, q), brute_count_pattern(h, g.g, PatternMode::h_partite, &g.layout));
    }
}
