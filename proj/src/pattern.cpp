#include "hck/pattern.hpp"

#include <algorithm>
#include <stdexcept>

#include "hck/hypergraph.hpp"

namespace hck {

Mask permute_mask(Mask m, std::span<const std::size_t> perm) {
    Mask out = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        if (m & (1u << a)) out |= 1u << perm[a];
    return out;
}

PatternGraph PatternGraph::from_masks(std::size_t k, std::vector<Mask> masks) {
    if (k == 0 || k > kMaxPatternK) throw std::invalid_argument("pattern k must be in [1, 8]");
    std::sort(masks.begin(), masks.end());
    if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
        throw std::invalid_argument("pattern has two edges on the same vertex subset");
    for (Mask m : masks) {
        if (m >> k) throw std::invalid_argument("pattern edge vertex out of range");
        if (popcount(m) < 2) throw std::invalid_argument("pattern edges need at least 2 vertices");
    }
    PatternGraph h;
    h.k_ = k;
    h.edges_ = std::move(masks);
    return h;
}

PatternGraph::PatternGraph(std::size_t k, const std::vector<std::vector<std::size_t>>& edges) {
    std::vector<Mask> masks;
    for (const auto& e : edges) {
        Mask m = 0;
        for (auto v : e) {
            if (v >= 32) throw std::invalid_argument("pattern edge vertex out of range");
            if (m & (1u << v)) throw std::invalid_argument("pattern edge repeats a vertex");
            m |= 1u << v;
        }
        masks.push_back(m);
    }
    *this = from_masks(k, std::move(masks));
}

std::vector<std::size_t> PatternGraph::sizes() const {
    std::vector<std::size_t> s;
    for (Mask m : edges_) s.push_back(popcount(m));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::size_t PatternGraph::isolated_count() const {
    Mask all = 0;
    for (Mask m : edges_) all |= m;
    return k_ - popcount(all);
}

std::size_t PatternGraph::slot_index(Mask m) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), m);
    if (it == edges_.end() || *it != m) return npos;
    return static_cast<std::size_t>(it - edges_.begin());
}

PatternGraph PatternGraph::relabeled(std::span<const std::size_t> perm) const {
    std::vector<Mask> out;
    for (Mask m : edges_) out.push_back(permute_mask(m, perm));
    return from_masks(k_, std::move(out));
}

std::size_t automorphism_count(const PatternGraph& h) {
    std::size_t count = 0;
    for_each_permutation(h.k(), [&](std::span<const std::size_t> perm) {
        for (Mask m : h.edges())
            if (h.slot_index(permute_mask(m, perm)) == PatternGraph::npos) return;
        ++count;
    });
    return count;
}

PatternGraph triangle_pattern() { return PatternGraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

PatternGraph fig4_pattern() {
    return PatternGraph(5, {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2}, {1, 2, 3, 4}});
}

PatternGraph hypercycle_pattern(std::size_t u, std::size_t k) {
    if (u < 2 || k < u) throw std::invalid_argument("hypercycle pattern needs 2 <= u <= k");
    std::vector<Mask> masks;
    for (std::size_t i = 0; i < k; ++i) {
        Mask m = 0;
        for (std::size_t j = 0; j < u; ++j) m |= 1u << ((i + j) % k);
        if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    }
    return PatternGraph::from_masks(k, std::move(masks));
}

}  // namespace hck
