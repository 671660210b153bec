#include "hck/avgcase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hck/checked.hpp"
#include "hck/reductions.hpp"

namespace hck {

namespace {

std::size_t equal_part_size(const CircleLayout& layout) {
    const auto sizes = layout.part_sizes();
    if (sizes.empty()) throw std::invalid_argument("layout has no partitions");
    for (auto s : sizes)
        if (s != sizes[0]) throw std::invalid_argument("partitions must have equal sizes");
    return sizes[0];
}

std::vector<std::size_t> parts_of(Mask m, std::size_t k) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < k; ++p)
        if (m & (1u << p)) out.push_back(p);
    return out;
}

// Mixed-radix index of the slot edge picking local[p] in each partition p of the slot.
struct SlotIndexer {
    std::vector<std::size_t> parts, stride, radix;
    std::size_t count = 1;

    SlotIndexer(Mask m, const std::vector<std::size_t>& sizes) : parts(parts_of(m, sizes.size())) {
        stride.resize(parts.size());
        for (std::size_t j = parts.size(); j-- > 0;) {
            stride[j] = count;
            radix.insert(radix.begin(), sizes[parts[j]]);
            count *= sizes[parts[j]];
        }
    }
    std::size_t digit(std::size_t idx, std::size_t j) const { return (idx / stride[j]) % radix[j]; }
};

struct LocalView {
    std::vector<std::vector<Vertex>> parts;
    std::vector<std::size_t> local_of, sizes;
    explicit LocalView(const CircleLayout& l) : parts(l.parts()), local_of(l.part_of.size()) {
        for (const auto& p : parts) {
            sizes.push_back(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) local_of[p[i]] = i;
        }
    }
};

std::uint64_t ipow(std::uint64_t b, std::size_t e) { return pow_checked(b, e); }

}  // namespace

GldpDescriptor make_gldp(const PatternGraph& h, const CircleLayout& layout) {
    const std::size_t n = equal_part_size(layout);
    return make_gldp(h, layout, choose_prime(n, h.k()));
}

GldpDescriptor make_gldp(const PatternGraph& h, const CircleLayout& layout, PrimeModulus modulus) {
    if (layout.k != h.k()) throw std::invalid_argument("make_gldp: partition count must equal pattern size");
    GldpDescriptor d{h, layout, modulus, {}, 0};
    const auto sizes = layout.part_sizes();
    d.offset.push_back(0);
    for (Mask m : h.edges()) {
        d.variables += SlotIndexer(m, sizes).count;
        d.offset.push_back(d.variables);
    }
    return d;
}

std::vector<std::uint64_t> gldp_indicator(const GldpDescriptor& desc, const Hypergraph& g) {
    if (g.n() != desc.layout.part_of.size()) throw std::invalid_argument("gldp_indicator: vertex count mismatch");
    const LocalView lv(desc.layout);
    std::vector<std::uint64_t> x(desc.variables, 0);
    for (const auto& e : g.edges()) {
        auto m = slot_of(desc.layout, e);
        const std::size_t j = m ? desc.h.slot_index(*m) : PatternGraph::npos;
        if (j == PatternGraph::npos) throw std::invalid_argument("gldp_indicator: edge outside the pattern's slots");
        const SlotIndexer si(*m, lv.sizes);
        std::size_t idx = 0;
        for (Vertex v : e) {
            const std::size_t p = desc.layout.part_of[v];
            const auto pos = std::find(si.parts.begin(), si.parts.end(), p) - si.parts.begin();
            idx += si.stride[static_cast<std::size_t>(pos)] * lv.local_of[v];
        }
        x[desc.offset[j] + idx] = 1;
    }
    return x;
}

Hypergraph gldp_graph(const GldpDescriptor& desc, std::span<const std::uint64_t> x) {
    if (x.size() != desc.variables) throw std::invalid_argument("gldp_graph: vector size mismatch");
    const LocalView lv(desc.layout);
    Hypergraph g(desc.layout.part_of.size(), desc.h.sizes());
    for (std::size_t j = 0; j < desc.h.edge_count(); ++j) {
        const SlotIndexer si(desc.h.edges()[j], lv.sizes);
        for (std::size_t idx = 0; idx < si.count; ++idx) {
            const auto v = x[desc.offset[j] + idx];
            if (v == 0) continue;
            if (v != 1) throw std::invalid_argument("gldp_graph: entries must be 0 or 1");
            Edge e;
            for (std::size_t t = 0; t < si.parts.size(); ++t) e.push_back(lv.parts[si.parts[t]][si.digit(idx, t)]);
            std::sort(e.begin(), e.end());
            g.add_edge(std::move(e));
        }
    }
    return g;
}

std::uint64_t eval_gldp(const GldpDescriptor& desc, std::span<const std::uint64_t> x, const MonomialHook* hook) {
    if (x.size() != desc.variables) throw std::invalid_argument("eval_gldp: vector size mismatch");
    const std::uint64_t p = desc.modulus.p;
    const std::size_t k = desc.h.k();
    const auto sizes = desc.layout.part_sizes();
    for (auto s : sizes)
        if (s == 0) return 0;
    std::vector<SlotIndexer> idx;
    for (Mask m : desc.h.edges()) idx.emplace_back(m, sizes);
    std::vector<std::size_t> a(k, 0), vars(desc.h.edge_count());
    std::uint64_t total = 0;
    while (true) {
        std::uint64_t term = 1 % p;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            std::size_t li = 0;
            for (std::size_t t = 0; t < idx[j].parts.size(); ++t) li += idx[j].stride[t] * a[idx[j].parts[t]];
            vars[j] = desc.offset[j] + li;
            term = mulmod(term, x[vars[j]] % p, p);
        }
        if (hook) (*hook)(std::span<const std::size_t>(vars));
        total = addmod(total, term, p);
        std::size_t t = k;
        while (t > 0) {
            --t;
            if (++a[t] < sizes[t]) break;
            a[t] = 0;
            if (t == 0) return total;
        }
        if (k == 0) return total;
    }
}

CorrectorResult correct_polynomial(const CorrectorProblem& problem, const Groups& target, const Groups& control,
                                   std::uint64_t control_value, const CorrectorOptions& opt) {
    const std::size_t d = problem.group_sizes.size();
    if (d == 0 || d > 20) throw std::invalid_argument("corrector: group count must be in [1, 20]");
    if (problem.p < 2) throw std::invalid_argument("corrector: bad modulus");
    if (!(problem.mu > 0.0 && problem.mu < 1.0)) throw std::invalid_argument("corrector: mu must be in (0, 1)");
    auto check_shape = [&](const Groups& x) {
        if (x.size() != d) throw std::invalid_argument("corrector: group count mismatch");
        for (std::size_t j = 0; j < d; ++j)
            if (x[j].size() != problem.group_sizes[j]) throw std::invalid_argument("corrector: group size mismatch");
    };
    check_shape(target);
    check_shape(control);
    const std::size_t reps = opt.max_repetitions
                                 ? opt.max_repetitions
                                 : static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / opt.delta_fail))) + 2;
    CorrectorResult res;
    const std::uint64_t p = problem.p;

    auto vote = [&](const Groups& x, std::uint64_t seed) -> std::optional<std::uint64_t> {
        std::map<std::uint64_t, std::size_t> votes;
        for (std::size_t r = 0; r < reps; ++r) {
            ++res.repetitions;
            Rng rng(derive_seed(seed, r));
            Groups xp = x;
            if (problem.symmetry) {
                const auto perms = problem.symmetry(rng);
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < x[j].size(); ++i) xp[j][perms[j][i]] = x[j][i];
            }
            Groups U(d), W(d);
            for (std::size_t j = 0; j < d; ++j) {
                U[j].resize(xp[j].size());
                W[j].resize(xp[j].size());
                for (std::size_t i = 0; i < xp[j].size(); ++i) {
                    const std::uint8_t rb = rng.bernoulli(problem.mu) ? 1 : 0;
                    U[j][i] = xp[j][i] | rb;
                    W[j][i] = rb & static_cast<std::uint8_t>(!xp[j][i]);
                }
            }
            std::uint64_t acc = 0;
            bool ok = true;
            Groups q(d);
            for (std::uint64_t S = 0; S < (std::uint64_t{1} << d); ++S) {
                for (std::size_t j = 0; j < d; ++j) q[j] = ((S >> j) & 1) ? U[j] : W[j];
                if (opt.query_log) opt.query_log->push_back(q);
                ++res.queries;
                std::uint64_t v = 0;
                try {
                    v = problem.oracle(q) % p;
                } catch (const std::exception&) {
                    ok = false;
                    break;
                }
                const bool negative = ((d - static_cast<std::size_t>(__builtin_popcountll(S))) & 1) != 0;
                acc = negative ? submod(acc, v, p) : addmod(acc, v, p);
            }
            if (!ok) {
                ++res.failed_repetitions;
                continue;
            }
            if (++votes[acc] >= 2) return acc;
        }
        return std::nullopt;
    };

    const auto c = vote(control, derive_seed(opt.seed, 1));
    if (!c || *c != control_value % p) {
        res.failure = c ? "control instance answered incorrectly" : "no quorum on the control instance";
        return res;
    }
    res.control_ok = true;
    const auto t = vote(target, derive_seed(opt.seed, 2));
    if (!t) {
        res.failure = "no quorum on the target instance";
        return res;
    }
    res.value = *t;
    return res;
}

CorrectorResult correct_worst_case(const GldpDescriptor& desc, std::span<const std::uint64_t> instance,
                                   const UhOracle& avg_oracle, double mu, const CorrectorOptions& opt) {
    if (instance.size() != desc.variables) throw std::invalid_argument("correct_worst_case: instance size mismatch");
    const std::size_t k = desc.h.k();
    const std::size_t d = desc.degree();
    const auto sizes = desc.layout.part_sizes();
    std::vector<SlotIndexer> idx;
    for (Mask m : desc.h.edges()) idx.emplace_back(m, sizes);

    CorrectorProblem prob;
    prob.p = desc.modulus.p;
    prob.mu = mu;
    for (std::size_t j = 0; j < d; ++j) prob.group_sizes.push_back(desc.group_size(j));
    prob.symmetry = [&](Rng& rng) {
        std::vector<std::vector<std::size_t>> vperm(k);
        for (std::size_t t = 0; t < k; ++t) {
            vperm[t].resize(sizes[t]);
            std::iota(vperm[t].begin(), vperm[t].end(), 0);
            for (std::size_t i = sizes[t]; i > 1; --i) std::swap(vperm[t][i - 1], vperm[t][rng.below(i)]);
        }
        std::vector<std::vector<std::size_t>> out(d);
        for (std::size_t j = 0; j < d; ++j) {
            out[j].resize(idx[j].count);
            for (std::size_t i = 0; i < idx[j].count; ++i) {
                std::size_t ni = 0;
                for (std::size_t t = 0; t < idx[j].parts.size(); ++t)
                    ni += idx[j].stride[t] * vperm[idx[j].parts[t]][idx[j].digit(i, t)];
                out[j][i] = ni;
            }
        }
        return out;
    };
    prob.oracle = [&](const Groups& q) {
        std::vector<std::uint64_t> flat;
        flat.reserve(desc.variables);
        for (const auto& grp : q) flat.insert(flat.end(), grp.begin(), grp.end());
        return avg_oracle(desc.h, PartiteGraph{gldp_graph(desc, flat), desc.layout});
    };

    Groups target(d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < desc.group_size(j); ++i) {
            const auto v = instance[desc.offset[j] + i];
            if (v > 1) throw std::invalid_argument("correct_worst_case: instance must be 0/1");
            target[j].push_back(static_cast<std::uint8_t>(v));
        }
    }
    // Control: one planted copy; isolated pattern vertices range freely.
    Rng crng(derive_seed(opt.seed, 0x636f6e74));
    std::vector<std::size_t> tuple(k);
    for (std::size_t t = 0; t < k; ++t) tuple[t] = sizes[t] ? crng.below(sizes[t]) : 0;
    Groups control(d);
    for (std::size_t j = 0; j < d; ++j) {
        control[j].assign(desc.group_size(j), 0);
        std::size_t li = 0;
        for (std::size_t t = 0; t < idx[j].parts.size(); ++t) li += idx[j].stride[t] * tuple[idx[j].parts[t]];
        control[j][li] = 1;
    }
    Mask covered = 0;
    for (Mask m : desc.h.edges()) covered |= m;
    std::uint64_t control_value = 1;
    for (std::size_t t = 0; t < k; ++t)
        if (!(covered & (1u << t))) control_value = mul_checked(control_value, sizes[t]);
    return correct_polynomial(prob, target, control, control_value, opt);
}

std::uint64_t SGFamily::member_count() const { return ipow(b, slots.size()); }

std::vector<std::uint8_t> SGFamily::member_labels(std::uint64_t index) const {
    std::vector<std::uint8_t> ell(slots.size());
    for (std::size_t j = slots.size(); j-- > 0;) {
        ell[j] = static_cast<std::uint8_t>(1 + index % b);
        index /= b;
    }
    return ell;
}

SGFamily build_sg(const PartiteGraph& g, std::vector<Mask> slots, std::size_t b, std::uint64_t seed) {
    if (b < 2 || b > 255) throw std::invalid_argument("build_sg: b must be in [2, 255]");
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (Mask m : slots)
        if (popcount(m) < 2 || (g.layout.k < 32 && (m >> g.layout.k)))
            throw std::invalid_argument("build_sg: invalid slot");
    SGFamily fam;
    fam.b = b;
    fam.slots = slots;
    fam.base = g;
    const auto parts = g.layout.parts();
    Rng rng(seed);
    for (Mask m : slots) {
        auto& cands = fam.candidates.emplace_back();
        auto& labels = fam.labels.emplace_back();
        for_each_slot_edge(parts, m, [&](std::span<const Vertex> e) {
            cands.emplace_back(e.begin(), e.end());
            if (g.g.has_edge(e))
                labels.push_back(1);
            else
                labels.push_back(static_cast<std::uint8_t>(b == 2 ? 2 : 2 + rng.below(b - 1)));
        });
    }
    return fam;
}

PartiteGraph sg_member(const SGFamily& fam, std::span<const std::uint8_t> ell) {
    if (ell.size() != fam.slots.size()) throw std::invalid_argument("sg_member: one label per slot required");
    std::vector<std::size_t> sizes;
    for (Mask m : fam.slots) sizes.push_back(popcount(m));
    PartiteGraph out{Hypergraph(fam.base.g.n(), sizes), fam.base.layout};
    for (std::size_t j = 0; j < fam.slots.size(); ++j) {
        if (ell[j] < 1 || ell[j] > fam.b) throw std::invalid_argument("sg_member: label out of range");
        for (std::size_t i = 0; i < fam.candidates[j].size(); ++i)
            if (fam.labels[j][i] == ell[j]) out.g.add_edge(fam.candidates[j][i]);
    }
    return out;
}

std::optional<std::uint64_t> LabeledCountTable::find(FragmentKey key) const {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

std::uint64_t LabeledCountTable::lookup(FragmentKey key, const PatternGraph& h, std::size_t n) const {
    if (auto v = find(key)) return *v;
    const Mask all = (1u << h.k()) - 1;
    auto full = find(FragmentKey{all, key.edges});
    if (!full) throw std::out_of_range("LabeledCountTable: fragment not available");
    const std::uint64_t div = ipow(n, h.k() - popcount(key.labels));
    if (*full % div != 0) throw InvariantError("LabeledCountTable: derived entry is not integral");
    return *full / div;
}

void count_base_cases(const PartiteGraph& g, const PatternGraph& h, LabeledCountTable& table) {
    const std::size_t k = h.k();
    if (g.layout.k != k) throw std::invalid_argument("count_base_cases: partition count mismatch");
    const auto sizes = g.layout.part_sizes();
    std::vector<std::uint64_t> per_slot(h.edge_count(), 0);
    for (const auto& e : g.g.edges()) {
        auto m = slot_of(g.layout, e);
        if (!m) continue;
        const auto j = h.slot_index(*m);
        if (j != PatternGraph::npos) ++per_slot[j];
    }
    auto free_product = [&](Mask m) {
        std::uint64_t r = 1;
        for (std::size_t t = 0; t < k; ++t)
            if (m & (1u << t)) r = mul_checked(r, sizes[t]);
        return r;
    };
    for (Mask T = 0; T < (1u << k); ++T) {
        table.entries[FragmentKey{T, 0}] = free_product(T);
        for (std::size_t j = 0; j < h.edge_count(); ++j) {
            const Mask m = h.edges()[j];
            if ((m & ~T) != 0) continue;
            table.entries[FragmentKey{T, 1u << j}] = mul_checked(per_slot[j], free_product(T & ~m));
        }
    }
}

InclusionContext::InclusionContext(PatternGraph h_, std::vector<Mask> family_slots_, std::size_t b_, std::size_t n_)
    : h(std::move(h_)), family_slots(std::move(family_slots_)), b(b_), n(n_) {
    std::sort(family_slots.begin(), family_slots.end());
    for (Mask m : h.edges())
        if (!std::binary_search(family_slots.begin(), family_slots.end(), m))
            throw std::invalid_argument("InclusionContext: family slots must contain the pattern's edges");
    aut_ = automorphism_count(h);
    for_each_permutation(h.k(), [&](std::span<const std::size_t> perm) {
        std::vector<Mask> img;
        for (Mask m : h.edges()) {
            const Mask pm = permute_mask(m, perm);
            if (!std::binary_search(family_slots.begin(), family_slots.end(), pm)) return;
            img.push_back(pm);
        }
        images_.push_back(std::move(img));
    });
}

std::uint64_t InclusionContext::c_g(std::uint32_t f, std::uint32_t lp) const {
    std::uint64_t count = 0;
    for (const auto& img : images_) {
        std::uint32_t inter = 0;
        for (std::size_t i = 0; i < h.edge_count(); ++i)
            if ((f >> i & 1) && std::find(img.begin(), img.end(), h.edges()[i]) != img.end()) inter |= 1u << i;
        if (inter == lp) ++count;
    }
    if (count % aut_ != 0) throw InvariantError("c_g: count not divisible by |Aut(H)|");
    return count / aut_;
}

namespace {

void check_fragment(const InclusionContext& ctx, FragmentKey key) {
    Mask covered = 0;
    for (std::size_t i = 0; i < ctx.h.edge_count(); ++i)
        if (key.edges >> i & 1) covered |= ctx.h.edges()[i];
    if ((covered & ~key.labels) != 0) throw std::invalid_argument("fragment edges leave its label set");
    if (ctx.h.edge_count() < 32 && (key.edges >> ctx.h.edge_count())) throw std::invalid_argument("fragment edge index out of range");
}

// n^(k-v) * c_g(F, L') * b^(E_tot - |F| - e_H + |L'|), zero when c_g vanishes.
__int128 coefficient(const InclusionContext& ctx, FragmentKey key, std::uint32_t lp) {
    const std::uint64_t cg = ctx.c_g(key.edges, lp);
    if (cg == 0) return 0;
    const long exp = static_cast<long>(ctx.family_slots.size()) - __builtin_popcount(key.edges) -
                     static_cast<long>(ctx.h.edge_count()) + __builtin_popcount(lp);
    if (exp < 0) throw InvariantError("inclusion: negative exponent with nonzero c_g");
    __int128 c = cg;
    for (std::size_t i = 0; i < ctx.h.k() - popcount(key.labels); ++i) c *= static_cast<__int128>(ctx.n);
    for (long i = 0; i < exp; ++i) c *= static_cast<__int128>(ctx.b);
    return c;
}

}  // namespace

std::uint64_t sg_label_one_sum(const SGFamily& fam, std::span<const std::uint64_t> member_counts,
                               const std::vector<Mask>& f_slots) {
    if (member_counts.size() != fam.member_count()) throw std::invalid_argument("sg_label_one_sum: need every member");
    std::vector<std::size_t> js;
    for (Mask m : f_slots) {
        auto it = std::lower_bound(fam.slots.begin(), fam.slots.end(), m);
        if (it == fam.slots.end() || *it != m) throw std::invalid_argument("sg_label_one_sum: slot not in family");
        js.push_back(static_cast<std::size_t>(it - fam.slots.begin()));
    }
    std::uint64_t total = 0;  // wraps mod 2^64 on garbage input
    for (std::uint64_t idx = 0; idx < member_counts.size(); ++idx) {
        const auto ell = fam.member_labels(idx);
        bool ones = true;
        for (auto j : js) ones = ones && ell[j] == 1;
        if (ones) total += member_counts[idx];
    }
    return total;
}

__int128 inclusion_rhs(const InclusionContext& ctx, FragmentKey key,
                       const std::function<std::uint64_t(FragmentKey)>& c) {
    check_fragment(ctx, key);
    __int128 total = 0;
    // Submasks of F, including F and the empty set.
    for (std::uint32_t lp = key.edges;; lp = (lp - 1) & key.edges) {
        const __int128 coef = coefficient(ctx, key, lp);
        if (coef != 0) total += coef * static_cast<__int128>(c(FragmentKey{key.labels, lp}));
        if (lp == 0) break;
    }
    return total;
}

std::uint64_t inclusion_step(const InclusionContext& ctx, FragmentKey key, const LabeledCountTable& table,
                             std::uint64_t c_sg) {
    check_fragment(ctx, key);
    __int128 rest = c_sg;
    for (std::uint32_t lp = (key.edges - 1) & key.edges;; lp = (lp - 1) & key.edges) {
        const __int128 coef = coefficient(ctx, key, lp);
        if (coef != 0) rest -= coef * static_cast<__int128>(table.lookup(FragmentKey{key.labels, lp}, ctx.h, ctx.n));
        if (lp == 0) break;
    }
    const __int128 own = coefficient(ctx, key, key.edges);
    if (own == 0) throw InvariantError("inclusion_step: fragment has a zero coefficient");
    if (rest < 0 || rest % own != 0) throw InvariantError("inclusion_step: non-integral solution");
    const __int128 v = rest / own;
    if (v > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max()))
        throw InvariantError("inclusion_step: solution exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

LabeledCountsResult count_labeled_via_er(const PartiteGraph& g, const PatternGraph& h, const KpartiteCounter& counter,
                                         std::size_t b, std::uint64_t seed) {
    const std::size_t k = h.k();
    if (g.layout.k != k) throw std::invalid_argument("count_labeled_via_er: partition count mismatch");
    const std::size_t n = equal_part_size(g.layout);
    const SGFamily fam = build_sg(g, h.slots(), b, seed);
    LabeledCountsResult res;
    const std::uint64_t members = fam.member_count();
    res.member_counts.resize(members);
    for (std::uint64_t idx = 0; idx < members; ++idx) {
        const auto ell = fam.member_labels(idx);
        res.member_counts[idx] = counter(h, sg_member(fam, ell));
        ++res.calls;
    }
    count_base_cases(g, h, res.table);
    const InclusionContext ctx(h, fam.slots, b, n);
    const Mask all = (1u << k) - 1;
    const std::uint32_t e_all = (1u << h.edge_count()) - 1;
    std::vector<std::uint32_t> order;
    for (std::uint32_t f = 0; f <= e_all; ++f)
        if (__builtin_popcount(f) >= 2) order.push_back(f);
    std::stable_sort(order.begin(), order.end(),
                     [](auto a, auto c) { return __builtin_popcount(a) < __builtin_popcount(c); });
    for (auto f : order) {
        std::vector<Mask> f_slots;
        for (std::size_t i = 0; i < h.edge_count(); ++i)
            if (f >> i & 1) f_slots.push_back(h.edges()[i]);
        const std::uint64_t c_sg = sg_label_one_sum(fam, res.member_counts, f_slots);
        res.table.entries[FragmentKey{all, f}] = inclusion_step(ctx, FragmentKey{all, f}, res.table, c_sg);
    }
    res.full = *res.table.find(FragmentKey{all, e_all});
    return res;
}

namespace {

struct BruteErState {
    bool valid = false;
    std::uint64_t key = 0;
    std::size_t aut = 1;
    std::vector<std::uint32_t> masks;  // vertex set of every embedding
};

std::uint64_t pattern_key(const PatternGraph& h) {
    std::uint64_t x = h.k() * 0x9e3779b97f4a7c15ULL;
    for (Mask m : h.edges()) x = (x ^ m) * 0xbf58476d1ce4e5b9ULL;
    return x;
}

// All injective maps of h into g (restricted to `allowed`), reported as vertex masks
// when n <= 32 and counted otherwise.
template <class F>
void for_each_embedding(const PatternGraph& h, const Hypergraph& g, const std::vector<bool>& allowed, F&& f) {
    const std::size_t k = h.k(), n = g.n();
    std::vector<std::uint64_t> bitmap;
    const bool dense = n <= 20;
    if (dense) {
        bitmap.assign(((std::size_t{1} << n) + 63) / 64, 0);
        for (const auto& e : g.edges()) {
            std::size_t m = 0;
            for (Vertex v : e) m |= std::size_t{1} << v;
            bitmap[m >> 6] |= std::uint64_t{1} << (m & 63);
        }
    }
    // Edges whose highest pattern vertex is d.
    std::vector<std::vector<Mask>> closing(k);
    for (Mask m : h.edges()) closing[31 - __builtin_clz(m)].push_back(m);
    std::vector<Vertex> phi(k);
    std::vector<bool> used(n, false);
    Edge buf;
    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (d == k) {
            f(phi);
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used[v] || !allowed[v]) continue;
            phi[d] = v;
            bool ok = true;
            for (Mask m : closing[d]) {
                if (dense) {
                    std::size_t vm = 0;
                    for (std::size_t a = 0; a <= d; ++a)
                        if (m & (1u << a)) vm |= std::size_t{1} << phi[a];
                    ok = (bitmap[vm >> 6] >> (vm & 63)) & 1;
                } else {
                    buf.clear();
                    for (std::size_t a = 0; a <= d; ++a)
                        if (m & (1u << a)) buf.push_back(phi[a]);
                    ok = g.has_unsorted(buf);
                }
                if (!ok) break;
            }
            if (!ok) continue;
            used[v] = true;
            self(self, d + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace

ErOracle make_brute_er_oracle() {
    auto state = std::make_shared<BruteErState>();
    return [state](const PatternGraph& h, const Hypergraph& g, const std::vector<bool>& keep) -> std::uint64_t {
        if (keep.size() != g.n()) throw std::invalid_argument("er oracle: keep mask size mismatch");
        if (g.n() > 32) {
            std::uint64_t maps = 0;
            for_each_embedding(h, g, keep, [&](const std::vector<Vertex>&) { ++maps; });
            return maps / automorphism_count(h);
        }
        const std::uint64_t key = g.fingerprint() ^ pattern_key(h);
        if (!state->valid || state->key != key) {
            state->masks.clear();
            const std::vector<bool> all(g.n(), true);
            for_each_embedding(h, g, all, [&](const std::vector<Vertex>& phi) {
                std::uint32_t m = 0;
                for (Vertex v : phi) m |= 1u << v;
                state->masks.push_back(m);
            });
            state->aut = automorphism_count(h);
            state->key = key;
            state->valid = true;
        }
        std::uint32_t km = 0;
        for (std::size_t v = 0; v < g.n(); ++v)
            if (keep[v]) km |= 1u << v;
        std::uint64_t maps = 0;
        for (auto m : state->masks)
            if ((m & ~km) == 0) ++maps;
        if (maps % state->aut != 0) throw InvariantError("er oracle: embeddings not divisible by |Aut(H)|");
        return maps / state->aut;
    };
}

ErOracle make_corrupt_er_oracle(ErOracle inner, double rate, std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    return [inner = std::move(inner), rate, rng](const PatternGraph& h, const Hypergraph& g,
                                                 const std::vector<bool>& keep) -> std::uint64_t {
        const std::uint64_t truth = inner(h, g, keep);
        if (!rng->bernoulli(rate)) return truth;
        std::uint64_t v;
        do {
            v = (*rng)() & 0xffffffffULL;
        } while (v == truth);
        return v;
    };
}

KpartiteResult kpartite_from_er(const PartiteGraph& g, const PatternGraph& h, const ErOracle& er, std::size_t b,
                                std::uint64_t seed) {
    const std::size_t k = h.k();
    if (g.layout.k != k) throw std::invalid_argument("kpartite_from_er: partition count mismatch");
    if (!is_kpartite(g.g, g.layout)) throw std::invalid_argument("kpartite_from_er: graph is not k-partite");
    if (b < 2) throw std::invalid_argument("kpartite_from_er: b must be at least 2");
    std::vector<std::size_t> sizes = g.g.sizes();
    for (auto s : h.sizes()) sizes.push_back(s);
    Hypergraph gp(g.g.n(), sizes);
    gp.reserve(2 * g.g.edge_count() + 64);
    for (const auto& e : g.g.edges()) gp.add_edge(e);
    Rng rng(seed);
    for (auto s : h.sizes())
        for_each_subset(g.g.n(), s, [&](std::span<const Vertex> e) {
            if (!slot_of(g.layout, e) && rng.one_in(b)) gp.add_edge(Edge(e.begin(), e.end()));
        });
    KpartiteResult res;
    std::vector<bool> keep(gp.n());
    for (Mask S = 0; S < (1u << k); ++S) {
        for (std::size_t v = 0; v < gp.n(); ++v) keep[v] = (S >> g.layout.part_of[v]) & 1;
        const std::uint64_t val = er(h, gp, keep);
        ++res.calls;
        if ((k - popcount(S)) % 2 == 0)
            res.count += val;
        else
            res.count -= val;
    }
    return res;
}

PipelineResult wc2ac_pipeline(const PartiteGraph& g, const PatternGraph& h, const ErOracle& er, std::size_t b,
                              double delta_fail, std::uint64_t seed, std::size_t kp_quorum) {
    if (kp_quorum < 1 || kp_quorum > kMaxKpAttempts) throw std::invalid_argument("wc2ac_pipeline: bad quorum");
    PipelineResult out;
    std::uint64_t call_no = 0;
    KpartiteCounter kp = [&](const PatternGraph& hT, const PartiteGraph& member) {
        ++out.stats.kpartite_calls;
        std::map<std::uint64_t, std::size_t> votes;
        for (std::size_t a = 0; a < kMaxKpAttempts; ++a) {
            const auto r = kpartite_from_er(member, hT, er, b, derive_seed(seed, 0x100000 + call_no++));
            ++out.stats.kpartite_attempts;
            out.stats.er_calls += r.calls;
            if (++votes[r.count] >= kp_quorum) return r.count;
        }
        throw std::runtime_error("k-partite counts never reached a quorum");
    };
    UhOracle uh = [&](const PatternGraph& hT, const PartiteGraph& gg) {
        ++out.stats.uh_queries;
        return count_labeled_via_er(gg, hT, kp, b, derive_seed(seed, 0x200000 + call_no++)).full;
    };
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= h.k(); ++i) fact *= i;
    const double per_call_delta = delta_fail / static_cast<double>(fact / automorphism_count(h));
    std::uint64_t hk_no = 0;
    HPartiteCounter counter = [&](const PatternGraph& hT, const PartiteGraph& gT) {
        const auto desc = make_gldp(hT, gT.layout);
        const auto x = gldp_indicator(desc, gT.g);
        CorrectorOptions opt;
        opt.delta_fail = per_call_delta;
        opt.seed = derive_seed(seed, hk_no++);
        const auto res = correct_worst_case(desc, x, uh, 1.0 / static_cast<double>(b), opt);
        if (!res.value) throw CorrectorFailure(res.failure);
        return *res.value;
    };
    try {
        const auto hk = hk_to_h(h, g, counter);
        out.stats.hk_calls = hk.calls;
        out.count = hk.count;
    } catch (const CorrectorFailure& e) {
        out.failure = e.what();
    }
    return out;
}

}  // namespace hck
