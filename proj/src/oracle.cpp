#include "hck/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hck/generate.hpp"

namespace hck {

namespace {

void check_u_k(std::size_t u, std::size_t k) {
    if (u < 2) throw std::invalid_argument("oracle: u must be at least 2");
    if (k < u) throw std::invalid_argument("oracle: k must be at least u");
    if (k > kMaxPatternK) throw std::invalid_argument("oracle: k capped at 8");
}

void check_layout(const Hypergraph& g, const CircleLayout& layout, std::size_t k) {
    if (layout.k != k) throw std::invalid_argument("oracle: layout.k must equal k");
    if (layout.part_of.size() != g.n()) throw std::invalid_argument("oracle: layout size mismatch");
    for (auto s : layout.part_sizes())
        if (s > kOracleMaxN) throw std::invalid_argument("oracle: partition larger than 12");
}

// Window i of a length-k cycle: positions i, i+1, ..., i+u-1 mod k.
Edge window(const std::vector<Vertex>& seq, std::size_t i, std::size_t u) {
    Edge e;
    for (std::size_t j = 0; j < u; ++j) e.push_back(seq[(i + j) % seq.size()]);
    std::sort(e.begin(), e.end());
    return e;
}

// Sum of window weights if all windows exist.
Weight cycle_weight(const Hypergraph& g, const std::vector<Vertex>& seq, std::size_t u, bool& ok) {
    const std::size_t k = seq.size();
    const std::size_t windows = (k == u) ? 1 : k;
    Weight total = 0;
    for (std::size_t i = 0; i < windows; ++i) {
        auto w = g.weight(window(seq, i, u));
        if (!w) {
            ok = false;
            return 0;
        }
        if (__builtin_add_overflow(total, *w, &total)) throw OverflowError("oracle: weight overflow");
    }
    ok = true;
    return total;
}

// Visits every candidate cycle sequence. Free mode: distinct vertices; layered: one
// vertex per partition in order. Windows are checked as soon as they are complete.
void for_each_cycle(const Hypergraph& g, std::size_t u, std::size_t k, const CircleLayout* layout,
                    const std::function<void(const std::vector<Vertex>&)>& f) {
    std::vector<std::vector<Vertex>> choices(k);
    if (layout) {
        const auto parts = layout->parts();
        for (std::size_t i = 0; i < k; ++i) choices[i] = parts[i];
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (Vertex v = 0; v < g.n(); ++v) choices[i].push_back(v);
    }
    std::vector<Vertex> seq;
    std::vector<bool> used(g.n(), false);
    std::function<void()> rec = [&]() {
        const std::size_t d = seq.size();
        if (d == k) {
            f(seq);
            return;
        }
        for (Vertex v : choices[d]) {
            if (used[v]) continue;
            seq.push_back(v);
            // Non-wrapping window ending at position d.
            bool ok = true;
            if (k > u && d + 1 >= u) {
                Edge e(seq.end() - static_cast<std::ptrdiff_t>(u), seq.end());
                std::sort(e.begin(), e.end());
                ok = g.has_edge(e);
            }
            if (ok) {
                used[v] = true;
                rec();
                used[v] = false;
            }
            seq.pop_back();
        }
    };
    rec();
}

}  // namespace

CycleCount brute_count_hypercycles(const Hypergraph& g, std::size_t u, std::size_t k,
                                   const CircleLayout* layout) {
    check_u_k(u, k);
    CycleCount out;
    if (layout) {
        check_layout(g, *layout, k);
        out.backward_regime = (k % u == 0);
    } else if (g.n() > kOracleMaxN) {
        throw std::invalid_argument("oracle: free mode capped at 12 vertices");
    }
    std::uint64_t sequences = 0;
    for_each_cycle(g, u, k, layout, [&](const std::vector<Vertex>& seq) {
        bool ok = false;
        cycle_weight(g, seq, u, ok);
        if (ok) ++sequences;
    });
    if (k == u) {
        // Each edge is hit once per ordering of its vertices.
        std::uint64_t perms = 1;
        if (!layout)
            for (std::size_t i = 2; i <= k; ++i) perms *= i;
        out.count = sequences / perms;
    } else {
        out.count = layout ? sequences : sequences / (2 * k);
    }
    return out;
}

Weight brute_min_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k,
                            const CircleLayout* layout) {
    check_u_k(u, k);
    if (layout)
        check_layout(g, *layout, k);
    else if (g.n() > kOracleMaxN)
        throw std::invalid_argument("oracle: free mode capped at 12 vertices");
    Weight best = kInfWeight;
    for_each_cycle(g, u, k, layout, [&](const std::vector<Vertex>& seq) {
        bool ok = false;
        const Weight w = cycle_weight(g, seq, u, ok);
        if (ok) best = std::min(best, w);
    });
    return best;
}

namespace {

// Tuples x (x_i in V_i) such that every edge mask's image exists.
std::uint64_t count_identity(const std::vector<Mask>& edges, Mask labels, const Hypergraph& g,
                             const std::vector<std::vector<Vertex>>& parts) {
    std::vector<std::size_t> ls;
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (labels & (1u << i)) ls.push_back(i);
    for (auto l : ls)
        if (parts[l].empty()) return 0;
    std::vector<std::size_t> idx(ls.size(), 0);
    std::vector<Vertex> x(parts.size(), 0);
    std::uint64_t count = 0;
    while (true) {
        for (std::size_t j = 0; j < ls.size(); ++j) x[ls[j]] = parts[ls[j]][idx[j]];
        bool ok = true;
        for (Mask m : edges) {
            Edge e;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (m & (1u << i)) e.push_back(x[i]);
            if (!g.has_unsorted(e)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        std::size_t j = ls.size();
        while (j > 0) {
            --j;
            if (++idx[j] < parts[ls[j]].size()) break;
            idx[j] = 0;
            if (j == 0) return count;
        }
        if (ls.empty()) return count;
    }
}

}  // namespace

std::uint64_t brute_count_pattern(const PatternGraph& h, const Hypergraph& g, PatternMode mode,
                                  const CircleLayout* layout) {
    const std::size_t k = h.k();
    const Mask all = (k == 32) ? ~0u : ((1u << k) - 1);
    if (mode == PatternMode::free_er) {
        if (g.n() > kOracleMaxFreeN) throw std::invalid_argument("oracle: free pattern count capped at 20 vertices");
        // Injective maps, edge images checked once their last vertex is placed.
        std::vector<Vertex> phi(k);
        std::vector<bool> used(g.n(), false);
        std::uint64_t maps = 0;
        std::function<void(std::size_t)> rec = [&](std::size_t d) {
            if (d == k) {
                ++maps;
                return;
            }
            for (Vertex v = 0; v < g.n(); ++v) {
                if (used[v]) continue;
                phi[d] = v;
                bool ok = true;
                for (Mask m : h.edges()) {
                    if ((m >> d) != 1u) continue;  // highest vertex of m is d
                    Edge e;
                    for (std::size_t a = 0; a <= d; ++a)
                        if (m & (1u << a)) e.push_back(phi[a]);
                    if (!g.has_unsorted(e)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                used[v] = true;
                rec(d + 1);
                used[v] = false;
            }
        };
        rec(0);
        const auto aut = automorphism_count(h);
        if (maps % aut != 0) throw InvariantError("oracle: embedding count not divisible by |Aut(H)|");
        return maps / aut;
    }
    if (!layout) throw std::invalid_argument("oracle: partite modes need a layout");
    if (layout->k != k) throw std::invalid_argument("oracle: pattern k differs from partition count");
    if (layout->part_of.size() != g.n()) throw std::invalid_argument("oracle: layout size mismatch");
    for (auto s : layout->part_sizes())
        if (s > kOracleMaxN) throw std::invalid_argument("oracle: partition larger than 12");
    const auto parts = layout->parts();
    if (mode == PatternMode::h_partite) return count_identity(h.edges(), all, g, parts);
    // k-partite: every bijection pattern -> partitions, then divide out automorphisms.
    std::uint64_t total = 0;
    for_each_permutation(k, [&](std::span<const std::size_t> perm) {
        std::vector<Mask> edges;
        for (Mask m : h.edges()) edges.push_back(permute_mask(m, perm));
        total += count_identity(edges, all, g, parts);
    });
    const auto aut = automorphism_count(h);
    if (total % aut != 0) throw InvariantError("oracle: copy count not divisible by |Aut(H)|");
    return total / aut;
}

std::uint64_t brute_count_labeled(const LabeledFragment& l, const Hypergraph& g,
                                  const CircleLayout& layout) {
    if (layout.part_of.size() != g.n()) throw std::invalid_argument("oracle: layout size mismatch");
    if (layout.k < 32 && (l.labels >> layout.k)) throw std::invalid_argument("oracle: label out of range");
    for (Mask m : l.edges)
        if ((m & ~l.labels) != 0) throw std::invalid_argument("oracle: fragment edge outside its labels");
    return count_identity(l.edges, l.labels, g, layout.parts());
}

std::uint64_t brute_count_hyperclique(const Hypergraph& g, std::size_t u, std::size_t k,
                                      const CircleLayout* layout) {
    if (u < 2 || k < u) throw std::invalid_argument("oracle: need 2 <= u <= k");
    std::uint64_t count = 0;
    auto is_clique = [&](const std::vector<Vertex>& xs) {
        bool ok = true;
        for_each_subset(xs.size(), u, [&](std::span<const Vertex> s) {
            if (!ok) return;
            Edge e;
            for (auto i : s) e.push_back(xs[i]);
            std::sort(e.begin(), e.end());
            ok = g.has_edge(e);
        });
        return ok;
    };
    if (layout) {
        if (layout->k != k) throw std::invalid_argument("oracle: layout.k must equal k");
        const auto parts = layout->parts();
        std::vector<Vertex> xs(k);
        std::function<void(std::size_t)> rec = [&](std::size_t d) {
            if (d == k) {
                if (is_clique(xs)) ++count;
                return;
            }
            for (Vertex v : parts[d]) {
                xs[d] = v;
                rec(d + 1);
            }
        };
        rec(0);
        return count;
    }
    if (g.n() > kOracleMaxFreeN) throw std::invalid_argument("oracle: free clique count capped at 20 vertices");
    for_each_subset(g.n(), k, [&](std::span<const Vertex> s) {
        if (is_clique(std::vector<Vertex>(s.begin(), s.end()))) ++count;
    });
    return count;
}

Weight brute_min_hyperclique(const Hypergraph& g, std::size_t u, const CircleLayout& layout) {
    const std::size_t k = layout.k;
    if (u < 2 || k < u) throw std::invalid_argument("oracle: need 2 <= u <= k");
    const auto parts = layout.parts();
    Weight best = kInfWeight;
    std::vector<Vertex> xs(k);
    std::function<void(std::size_t)> rec = [&](std::size_t d) {
        if (d == k) {
            Weight total = 0;
            bool ok = true;
            for_each_subset(k, u, [&](std::span<const Vertex> s) {
                if (!ok) return;
                Edge e;
                for (auto i : s) e.push_back(xs[i]);
                std::sort(e.begin(), e.end());
                auto w = g.weight(e);
                if (!w) {
                    ok = false;
                    return;
                }
                if (__builtin_add_overflow(total, *w, &total)) throw OverflowError("oracle: weight overflow");
            });
            if (ok) best = std::min(best, total);
            return;
        }
        for (Vertex v : parts[d]) {
            xs[d] = v;
            rec(d + 1);
        }
    };
    rec(0);
    return best;
}

std::uint64_t brute_scq(const Database& db, const Query& q) {
    q.validate(&db);
    const std::size_t nv = q.var_count();
    std::vector<std::uint32_t> a(nv, 0);
    std::uint64_t count = 0;
    if (db.n == 0) return nv == 0 ? 1 : 0;
    while (true) {
        bool ok = true;
        for (const auto& atom : q.atoms) {
            Fact f;
            for (auto v : atom.vars) f.push_back(a[v]);
            if (!db.find(atom.relation)->contains(f)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        std::size_t j = nv;
        while (j > 0) {
            --j;
            if (++a[j] < db.n) break;
            a[j] = 0;
            if (j == 0) return count;
        }
        if (nv == 0) return count;
    }
}

}  // namespace hck
