#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hck/errors.hpp"

namespace hck {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;
using Weight = std::int64_t;

constexpr std::size_t kMaxPatternK = 8;
constexpr std::size_t kMaxUniformity = 6;
// +infinity for min-weight results.
constexpr Weight kInfWeight = std::numeric_limits<Weight>::max();

// k - ceil(k/c) + 1
std::size_t gamma(std::size_t c, std::size_t k);
// Largest k with gamma(c, k) == u.
std::size_t gamma_inverse(std::size_t c, std::size_t u);

// Vertex count, a size profile and a set of sorted hyperedges with optional weights.
// Edges are stored in insertion order; lookup goes through a hash index.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<std::size_t> sizes, bool weighted = false);

    std::size_t n() const { return n_; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    bool weighted() const { return weighted_; }
    bool allows_size(std::size_t s) const;

    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    Weight weight_at(std::size_t i) const { return weighted_ ? weights_[i] : 0; }

    // Throws std::invalid_argument on an unsorted/out-of-range/duplicate edge or a size
    // outside the profile.
    void add_edge(Edge e, Weight w = 0);
    // Adds the edge unless present; returns true if it was added.
    bool insert(Edge e, Weight w = 0);
    void reserve(std::size_t edges);

    // `e` must be sorted.
    bool has_edge(std::span<const Vertex> e) const { return find(e).has_value(); }
    std::optional<std::size_t> find(std::span<const Vertex> e) const;
    std::optional<Weight> weight(std::span<const Vertex> e) const;

    // Sorts a copy of `e` before looking it up.
    bool has_unsorted(std::span<const Vertex> e) const;

    bool operator==(const Hypergraph& other) const;

    // Order-independent digest of (n, edges, weights), updated on insert.
    std::uint64_t fingerprint() const;

private:
    static std::uint64_t hash(std::span<const Vertex> e);

    std::size_t n_ = 0;
    std::vector<std::size_t> sizes_;
    bool weighted_ = false;
    std::vector<Edge> edges_;
    std::vector<Weight> weights_;
    std::unordered_multimap<std::uint64_t, std::uint32_t> index_;
    std::uint64_t digest_ = 0;
};

// Vertex -> partition map over k partitions. Used both for circle layouts and for
// plain k-partite partitions.
struct CircleLayout {
    std::size_t k = 0;
    std::vector<std::size_t> part_of;

    std::vector<std::vector<Vertex>> parts() const;
    std::vector<std::size_t> part_sizes() const;
};

// Partition i holds vertices [i*n, (i+1)*n).
CircleLayout block_layout(std::size_t n_per_part, std::size_t k);

// Start of the window of u consecutive partitions (mod k) that `e` occupies with one
// vertex each, or nullopt. For u == k any edge with one vertex per partition has
// start 0.
std::optional<std::size_t> window_start(const CircleLayout& layout, std::span<const Vertex> e,
                                        std::size_t u);

// Every vertex assigned and every edge occupies u consecutive partitions.
bool validate_circle_layered(const Hypergraph& g, const CircleLayout& layout, std::size_t u);

// Every edge has at most one vertex per partition.
bool is_kpartite(const Hypergraph& g, const CircleLayout& layout);

// Bitmask of the partitions an edge touches; nullopt if it repeats a partition.
std::optional<std::uint32_t> slot_of(const CircleLayout& layout, std::span<const Vertex> e);

// Edges of g whose partition set is in `slots` (bitmasks).
Hypergraph restrict_to_slots(const Hypergraph& g, const CircleLayout& layout,
                             std::span<const std::uint32_t> slots);

}  // namespace hck
