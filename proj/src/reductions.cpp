#include "hck/reductions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hck/checked.hpp"

namespace hck {

CliqueCover clique_cover(std::size_t u, std::size_t k) {
    if (u < 2 || k < u || k > 32) throw std::invalid_argument("clique_cover: need 2 <= u <= k <= 32");
    CliqueCover c;
    c.u = u;
    c.k = k;
    c.width = gamma(u, k);
    for (std::size_t i = 0; i < k; ++i) {
        Mask m = 0;
        for (std::size_t j = 0; j < c.width; ++j) m |= 1u << ((i + j) % k);
        if (std::find(c.windows.begin(), c.windows.end(), m) == c.windows.end()) c.windows.push_back(m);
    }
    c.assigned.resize(c.windows.size());
    for_each_subset(k, u, [&](std::span<const Vertex> s) {
        Mask m = 0;
        for (auto p : s) m |= 1u << p;
        for (std::size_t w = 0; w < c.windows.size(); ++w)
            if ((m & ~c.windows[w]) == 0) {
                c.assigned[w].push_back(m);
                return;
            }
        throw InvariantError("clique_cover: u-subset not covered by any window");
    });
    return c;
}

PartiteGraph hyperclique_to_hypercycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u) {
    const std::size_t k = layout.k;
    if (!is_kpartite(g, layout)) throw std::invalid_argument("hyperclique_to_hypercycle: input is not k-partite");
    if (g.sizes() != std::vector<std::size_t>{u}) throw std::invalid_argument("hyperclique_to_hypercycle: input must be u-uniform");
    const auto cover = clique_cover(u, k);
    if (cover.width > kMaxUniformity) throw std::invalid_argument("hyperclique_to_hypercycle: gamma(u, k) exceeds 6");
    const auto parts = layout.parts();
    PartiteGraph out{Hypergraph(g.n(), {cover.width}, g.weighted()), layout};
    std::vector<Vertex> at(k);
    for (std::size_t w = 0; w < cover.windows.size(); ++w) {
        for_each_slot_edge(parts, cover.windows[w], [&](std::span<const Vertex> e) {
            for (Vertex v : e) at[layout.part_of[v]] = v;
            Weight total = 0;
            Edge sub;
            for (Mask s : cover.assigned[w]) {
                sub.clear();
                for (std::size_t p = 0; p < k; ++p)
                    if (s & (1u << p)) sub.push_back(at[p]);
                std::sort(sub.begin(), sub.end());
                auto wt = g.weight(sub);
                if (!wt) return;
                total = add_checked(total, *wt);
            }
            out.g.add_edge(Edge(e.begin(), e.end()), total);
        });
    }
    return out;
}

Hypergraph lift_uniformity(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t u_target) {
    const std::size_t k = layout.k;
    if (!(u < u_target)) throw std::invalid_argument("lift_uniformity: needs u < u_target");
    if (k % u_target == 0) throw std::invalid_argument("lift_uniformity: k divisible by u_target");
    if (!(2 * u_target > k && k > u_target)) throw std::invalid_argument("lift_uniformity: needs u_target < k < 2 u_target");
    if (u_target > kMaxUniformity) throw std::invalid_argument("lift_uniformity: u_target exceeds 6");
    if (!validate_circle_layered(g, layout, u)) throw std::invalid_argument("lift_uniformity: input not circle-layered");
    const auto parts = layout.parts();
    Hypergraph out(g.n(), {u_target}, g.weighted());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        const std::size_t s = *window_start(layout, e, u);
        Mask ext = 0;
        for (std::size_t j = u; j < u_target; ++j) ext |= 1u << ((s + j) % k);
        for_each_slot_edge(parts, ext, [&](std::span<const Vertex> c) {
            Edge ne(e);
            ne.insert(ne.end(), c.begin(), c.end());
            std::sort(ne.begin(), ne.end());
            out.add_edge(std::move(ne), g.weight_at(i));
        });
    }
    return out;
}

HkResult hk_to_h(const PatternGraph& h, const PartiteGraph& g, const HPartiteCounter& counter) {
    const std::size_t k = h.k();
    if (g.layout.k != k) throw std::invalid_argument("hk_to_h: pattern size differs from partition count");
    if (!is_kpartite(g.g, g.layout)) throw std::invalid_argument("hk_to_h: graph is not k-partite");
    std::set<std::vector<Mask>> seen;
    std::vector<std::size_t> per_slot_edges(std::size_t{1} << k, 0);
    for (const auto& e : g.g.edges()) ++per_slot_edges[*slot_of(g.layout, e)];
    HkResult res;
    for_each_permutation(k, [&](std::span<const std::size_t> perm) {
        std::vector<Mask> t;
        for (Mask m : h.edges()) t.push_back(permute_mask(m, perm));
        std::sort(t.begin(), t.end());
        if (!seen.insert(t).second) return;
        ++res.selections;
        for (Mask m : t)
            if (per_slot_edges[m] == 0) return;
        const auto hT = PatternGraph::from_masks(k, t);
        PartiteGraph gT{restrict_to_slots(g.g, g.layout, t), g.layout};
        ++res.calls;
        res.count = add_checked(res.count, counter(hT, gT));
    });
    return res;
}

}  // namespace hck
