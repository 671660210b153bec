#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hck/hypergraph.hpp"
#include "hck/pattern.hpp"
#include "hck/rng.hpp"

namespace hck {

// Edge present with probability 1/b, or mu when set.
struct RandomSpec {
    std::uint64_t b = 2;
    std::optional<double> mu;
    std::uint64_t seed = 0;

    void validate() const;
    bool draw(Rng& rng) const { return mu ? rng.bernoulli(*mu) : rng.one_in(b); }
    double probability() const { return mu ? *mu : 1.0 / static_cast<double>(b); }
};

struct PartiteGraph {
    Hypergraph g;
    CircleLayout layout;
};

// Each size-s subset of [0, n), s in sizes, independently.
Hypergraph gen_er(std::size_t n, std::span<const std::size_t> sizes, const RandomSpec& spec);

// k blocks of n_per_part vertices; candidates are the edges with one vertex in each
// partition of some slot.
PartiteGraph gen_kpartite_er(std::size_t n_per_part, std::size_t k, std::span<const Mask> slots,
                             const RandomSpec& spec);

// Number of candidate edges gen_kpartite_er draws from.
std::uint64_t kpartite_candidate_count(std::size_t n_per_part, std::span<const Mask> slots);

// Slots of the k circular windows of width u.
std::vector<Mask> window_masks(std::size_t k, std::size_t u);

// Random k-circle-layered u-uniform graph.
PartiteGraph gen_circle_layered(std::size_t n_per_part, std::size_t k, std::size_t u,
                                const RandomSpec& spec);

// Picks one vertex per partition and inserts the k window edges. Existing edges are
// kept (with their weights); new edges get `w`. `chosen`, if given, receives the
// planted vertex sequence in partition order.
Hypergraph plant_hypercycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                            std::uint64_t seed, std::vector<Vertex>* chosen = nullptr,
                            Weight w = 0);

// Plants the given sequence (one vertex per partition, in partition order).
Hypergraph plant_sequence(const Hypergraph& g, std::span<const Vertex> seq, std::size_t u,
                          Weight w = 0);

// Copy of g with independent uniform weights in [lo, hi].
Hypergraph with_random_weights(const Hypergraph& g, Weight lo, Weight hi, std::uint64_t seed);

// Calls f(span) for every size-s subset of [0, n) in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t s, F&& f) {
    if (s > n) return;
    std::vector<Vertex> c(s);
    for (std::size_t i = 0; i < s; ++i) c[i] = static_cast<Vertex>(i);
    while (true) {
        f(std::span<const Vertex>(c));
        std::size_t i = s;
        while (i > 0 && c[i - 1] == n - s + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < s; ++j) c[j] = c[j - 1] + 1;
    }
}

// Calls f(span) for every one-vertex-per-partition choice over the partitions in
// `mask`. The span is sorted by vertex id.
template <class F>
void for_each_slot_edge(const std::vector<std::vector<Vertex>>& parts, Mask mask, F&& f) {
    std::vector<std::size_t> ps;
    for (std::size_t p = 0; p < parts.size(); ++p)
        if (mask & (1u << p)) ps.push_back(p);
    for (auto p : ps)
        if (parts[p].empty()) return;
    std::vector<std::size_t> idx(ps.size(), 0);
    Edge e(ps.size());
    while (true) {
        for (std::size_t j = 0; j < ps.size(); ++j) e[j] = parts[ps[j]][idx[j]];
        std::sort(e.begin(), e.end());
        f(std::span<const Vertex>(e));
        std::size_t j = ps.size();
        while (j > 0) {
            --j;
            if (++idx[j] < parts[ps[j]].size()) break;
            idx[j] = 0;
            if (j == 0) return;
        }
        if (ps.empty()) return;
    }
}

}  // namespace hck
