#include "hck/dbcount.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "hck/checked.hpp"
#include "hck/errors.hpp"
#include "hck/oracle.hpp"
#include "hck/rng.hpp"

namespace hck {

Database gen_random_db(const std::vector<RelationSchema>& schemas, std::size_t n, const std::vector<double>& mus,
                       std::uint64_t seed) {
    if (schemas.size() != mus.size()) throw std::invalid_argument("gen_random_db: one density per relation");
    Database db;
    db.n = n;
    Rng rng(seed);
    for (std::size_t i = 0; i < schemas.size(); ++i) {
        const auto& s = schemas[i];
        if (s.arity == 0) throw std::invalid_argument("gen_random_db: arity 0 relation");
        if (s.arity > kMaxArity) throw std::invalid_argument("gen_random_db: arity above cap");
        if (!(mus[i] > 0.0 && mus[i] < 1.0)) throw std::invalid_argument("gen_random_db: mu must be in (0, 1)");
        Relation r;
        r.name = s.name;
        r.arity = s.arity;
        const std::uint64_t cands = pow_checked(n, s.arity);
        Fact f(s.arity);
        for (std::uint64_t c = 0; c < cands; ++c) {
            if (!rng.bernoulli(mus[i])) continue;
            std::uint64_t rest = c;
            for (std::size_t t = s.arity; t-- > 0;) {
                f[t] = static_cast<std::uint32_t>(rest % n);
                rest /= n;
            }
            r.facts.push_back(f);
        }
        r.reindex();
        db.relations.push_back(std::move(r));
    }
    return db;
}

namespace {

std::size_t fact_index(const Fact& f, std::size_t n) {
    std::size_t idx = 0;
    for (auto v : f) idx = idx * n + v;
    return idx;
}

ScqDescriptor scq_shape(const Database& db, const Query& q) {
    q.validate(&db);
    ScqDescriptor d;
    d.q = q;
    d.n = db.n;
    if (db.n == 0) throw std::invalid_argument("scq: empty domain");
    std::vector<bool> seen(q.var_count(), false);
    d.offset.push_back(0);
    for (const auto& a : q.atoms) {
        d.arity.push_back(a.vars.size());
        d.variables += pow_checked(db.n, a.vars.size());
        d.offset.push_back(d.variables);
        for (auto v : a.vars)
            if (!seen[v]) {
                seen[v] = true;
                d.atom_vars.push_back(v);
            }
    }
    d.head_only = q.head_only().size();
    return d;
}

}  // namespace

ScqDescriptor make_scq(const Database& db, const Query& q) {
    ScqDescriptor d = scq_shape(db, q);
    d.modulus = choose_prime(db.n < 2 ? 2 : db.n, std::max<std::size_t>(d.atom_vars.size() + d.head_only, 2));
    return d;
}

ScqDescriptor make_scq(const Database& db, const Query& q, std::uint64_t p) {
    ScqDescriptor d = scq_shape(db, q);
    if (!is_prime(p)) throw std::invalid_argument("make_scq: modulus is not prime");
    d.modulus = PrimeModulus{p, db.n, d.atom_vars.size()};
    return d;
}

std::vector<std::uint64_t> scq_indicator(const ScqDescriptor& desc, const Database& db) {
    if (db.n != desc.n) throw std::invalid_argument("scq_indicator: domain size mismatch");
    std::vector<std::uint64_t> x(desc.variables, 0);
    for (std::size_t j = 0; j < desc.q.atoms.size(); ++j) {
        const Relation* r = db.find(desc.q.atoms[j].relation);
        if (!r || r->arity != desc.arity[j]) throw std::invalid_argument("scq_indicator: relation mismatch");
        for (const auto& f : r->facts) x[desc.offset[j] + fact_index(f, desc.n)] = 1;
    }
    return x;
}

Database scq_database(const ScqDescriptor& desc, std::span<const std::uint64_t> x) {
    if (x.size() != desc.variables) throw std::invalid_argument("scq_database: vector size mismatch");
    Database db;
    db.n = desc.n;
    for (std::size_t j = 0; j < desc.q.atoms.size(); ++j) {
        Relation r;
        r.name = desc.q.atoms[j].relation;
        r.arity = desc.arity[j];
        Fact f(r.arity);
        for (std::size_t i = 0; i < desc.group_size(j); ++i) {
            const auto v = x[desc.offset[j] + i];
            if (v == 0) continue;
            if (v != 1) throw std::invalid_argument("scq_database: entries must be 0 or 1");
            std::size_t rest = i;
            for (std::size_t t = r.arity; t-- > 0;) {
                f[t] = static_cast<std::uint32_t>(rest % desc.n);
                rest /= desc.n;
            }
            r.facts.push_back(f);
        }
        r.reindex();
        db.relations.push_back(std::move(r));
    }
    return db;
}

std::uint64_t eval_scq_polynomial(const ScqDescriptor& desc, std::span<const std::uint64_t> x,
                                  const MonomialHook* hook) {
    if (x.size() != desc.variables) throw std::invalid_argument("eval_scq_polynomial: vector size mismatch");
    const std::uint64_t p = desc.modulus.p;
    const std::size_t nv = desc.atom_vars.size();
    std::vector<std::uint32_t> a(desc.q.var_count(), 0);
    std::vector<std::size_t> vars(desc.degree());
    std::uint64_t total = 0;
    while (true) {
        std::uint64_t term = 1 % p;
        for (std::size_t j = 0; j < desc.degree(); ++j) {
            std::size_t idx = 0;
            for (auto v : desc.q.atoms[j].vars) idx = idx * desc.n + a[v];
            vars[j] = desc.offset[j] + idx;
            term = mulmod(term, x[vars[j]] % p, p);
        }
        if (hook) (*hook)(std::span<const std::size_t>(vars));
        total = addmod(total, term, p);
        std::size_t t = nv;
        bool done = nv == 0;
        while (t > 0) {
            --t;
            if (++a[desc.atom_vars[t]] < desc.n) break;
            a[desc.atom_vars[t]] = 0;
            if (t == 0) done = true;
        }
        if (done) break;
    }
    for (std::size_t i = 0; i < desc.head_only; ++i) total = mulmod(total, desc.n % p, p);
    return total;
}

std::uint64_t eval_scq_polynomial(const Database& db, const Query& q) {
    const auto desc = make_scq(db, q);
    const auto x = scq_indicator(desc, db);
    return eval_scq_polynomial(desc, x);
}

UscqOracle make_brute_uscq_oracle() {
    return [](const Database& db, const Query& q) { return brute_scq(db, q); };
}

UscqOracle make_corrupt_uscq_oracle(UscqOracle inner, double rate, std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    return [inner = std::move(inner), rate, rng](const Database& db, const Query& q) -> std::uint64_t {
        const std::uint64_t truth = inner(db, q);
        if (!rng->bernoulli(rate)) return truth;
        std::uint64_t v;
        do {
            v = (*rng)() & 0xffffffffULL;
        } while (v == truth);
        return v;
    };
}

CorrectorResult scq_via_uscq(const Database& db, const Query& q, const UscqOracle& oracle, double delta_fail,
                             std::uint64_t seed, double mu) {
    const ScqDescriptor desc = make_scq(db, q);
    const std::size_t d = desc.degree();
    const std::size_t n = desc.n;
    CorrectorProblem prob;
    prob.p = desc.modulus.p;
    prob.mu = mu;
    for (std::size_t j = 0; j < d; ++j) prob.group_sizes.push_back(desc.group_size(j));
    prob.symmetry = [&](Rng& rng) {
        std::vector<std::size_t> pi(n);
        std::iota(pi.begin(), pi.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(pi[i - 1], pi[rng.below(i)]);
        std::vector<std::vector<std::size_t>> out(d);
        for (std::size_t j = 0; j < d; ++j) {
            out[j].resize(desc.group_size(j));
            for (std::size_t i = 0; i < out[j].size(); ++i) {
                std::size_t rest = i, ni = 0, scale = 1;
                for (std::size_t t = 0; t < desc.arity[j]; ++t) {
                    ni += pi[rest % n] * scale;
                    rest /= n;
                    scale *= n;
                }
                out[j][i] = ni;
            }
        }
        return out;
    };
    prob.oracle = [&](const Groups& g) {
        std::vector<std::uint64_t> flat;
        flat.reserve(desc.variables);
        for (const auto& grp : g) flat.insert(flat.end(), grp.begin(), grp.end());
        return oracle(scq_database(desc, flat), q);
    };
    const auto x = scq_indicator(desc, db);
    Groups target(d);
    for (std::size_t j = 0; j < d; ++j)
        target[j].assign(x.begin() + static_cast<std::ptrdiff_t>(desc.offset[j]),
                         x.begin() + static_cast<std::ptrdiff_t>(desc.offset[j + 1]));
    // Control: the facts of one random assignment, satisfied by that assignment alone.
    Rng crng(derive_seed(seed, 0x636f6e74));
    std::vector<std::uint32_t> a(q.var_count());
    for (auto& v : a) v = static_cast<std::uint32_t>(crng.below(n));
    Groups control(d);
    for (std::size_t j = 0; j < d; ++j) {
        control[j].assign(desc.group_size(j), 0);
        std::size_t idx = 0;
        for (auto v : q.atoms[j].vars) idx = idx * n + a[v];
        control[j][idx] = 1;
    }
    const std::uint64_t control_value = pow_checked(n, desc.head_only);
    CorrectorOptions opt;
    opt.delta_fail = delta_fail;
    opt.seed = seed;
    return correct_polynomial(prob, target, control, control_value, opt);
}

Query pattern_query(const PatternGraph& h) {
    if (h.k() > 26) throw std::invalid_argument("pattern_query: too many vertices");
    Query q;
    q.name = "H";
    for (std::size_t i = 0; i < h.k(); ++i) {
        q.var_names.push_back(std::string(1, static_cast<char>('A' + i)));
        q.head.push_back(i);
    }
    for (std::size_t j = 0; j < h.edge_count(); ++j) {
        Atom a;
        a.relation = "R" + std::to_string(j + 1);
        for (std::size_t i = 0; i < h.k(); ++i)
            if (h.edges()[j] & (1u << i)) a.vars.push_back(i);
        q.atoms.push_back(std::move(a));
    }
    return q;
}

Database pattern_database(const PartiteGraph& g, const PatternGraph& h) {
    if (g.layout.k != h.k()) throw std::invalid_argument("pattern_database: partition count mismatch");
    Database db;
    db.n = g.g.n();
    for (std::size_t j = 0; j < h.edge_count(); ++j) {
        Relation r;
        r.name = "R" + std::to_string(j + 1);
        r.arity = popcount(h.edges()[j]);
        for (const auto& e : g.g.edges()) {
            const auto m = slot_of(g.layout, e);
            if (!m || *m != h.edges()[j]) continue;
            Fact f(e.begin(), e.end());
            std::sort(f.begin(), f.end());
            do {
                r.facts.push_back(f);
            } while (std::next_permutation(f.begin(), f.end()));
        }
        r.reindex();
        db.relations.push_back(std::move(r));
    }
    return db;
}

}  // namespace hck
