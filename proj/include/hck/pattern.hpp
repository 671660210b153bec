#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hck {

using Mask = std::uint32_t;

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(__builtin_popcount(m)); }

// Image of a vertex subset under the vertex map a -> perm[a].
Mask permute_mask(Mask m, std::span<const std::size_t> perm);

// Small k-vertex pattern with mixed-size hyperedges. Each edge is a bitmask over
// pattern vertices; since edges are sets, the edge list is also the slot list.
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(std::size_t k, const std::vector<std::vector<std::size_t>>& edges);
    static PatternGraph from_masks(std::size_t k, std::vector<Mask> masks);

    std::size_t k() const { return k_; }
    const std::vector<Mask>& edges() const { return edges_; }
    const std::vector<Mask>& slots() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::vector<std::size_t> sizes() const;
    // Pattern vertices covered by no edge.
    std::size_t isolated_count() const;
    std::size_t slot_index(Mask m) const;  // npos if absent
    PatternGraph relabeled(std::span<const std::size_t> perm) const;

    bool operator==(const PatternGraph&) const = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t k_ = 0;
    std::vector<Mask> edges_;
};

std::size_t automorphism_count(const PatternGraph& h);

PatternGraph triangle_pattern();
// Edges {A,B},{B,C},{B,D},{C,D},{A,B,C},{B,C,D,E} on A..E = 0..4.
PatternGraph fig4_pattern();
// Tight u-uniform k-cycle on 0..k-1 (a single edge when k == u).
PatternGraph hypercycle_pattern(std::size_t u, std::size_t k);

// Calls f(perm) for every permutation of 0..k-1.
template <class F>
void for_each_permutation(std::size_t k, F&& f);

}  // namespace hck

#include <algorithm>
#include <numeric>

template <class F>
void hck::for_each_permutation(std::size_t k, F&& f) {
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        f(std::span<const std::size_t>(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}
