#include "hck/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hck {

const char* to_string(ParseErrc code) {
    switch (code) {
        case ParseErrc::malformed_header: return "malformed header";
        case ParseErrc::vertex_out_of_range: return "vertex out of range";
        case ParseErrc::duplicate_edge: return "duplicate edge";
        case ParseErrc::size_not_in_profile: return "edge size not in profile";
        case ParseErrc::malformed_line: return "malformed line";
        case ParseErrc::unsorted_edge: return "edge vertices not strictly increasing";
        case ParseErrc::weight_mismatch: return "weight annotation does not match header";
    }
    return "unknown parse error";
}

std::size_t gamma(std::size_t c, std::size_t k) {
    if (c < 2) throw std::invalid_argument("gamma: c must be at least 2");
    if (k < 1) throw std::invalid_argument("gamma: k must be positive");
    return k - (k + c - 1) / c + 1;
}

std::size_t gamma_inverse(std::size_t c, std::size_t u) {
    if (c < 2) throw std::invalid_argument("gamma_inverse: c must be at least 2");
    // gamma(c, k) grows by at most one per step and reaches u no later than k = c*u,
    // so a bounded linear scan finds the last k hitting u.
    std::optional<std::size_t> best;
    for (std::size_t k = 1; k <= c * (u + 1) + 1; ++k) {
        const std::size_t g = gamma(c, k);
        if (g == u) best = k;
        if (g > u) break;
    }
    if (!best) throw std::invalid_argument("gamma_inverse: no k with gamma(c, k) == u");
    return *best;
}

Hypergraph::Hypergraph(std::size_t n, std::vector<std::size_t> sizes, bool weighted)
    : n_(n), sizes_(std::move(sizes)), weighted_(weighted) {
    std::sort(sizes_.begin(), sizes_.end());
    sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
    for (auto s : sizes_)
        if (s < 2) throw std::invalid_argument("hyperedge sizes must be at least 2");
}

bool Hypergraph::allows_size(std::size_t s) const {
    return std::binary_search(sizes_.begin(), sizes_.end(), s);
}

std::uint64_t Hypergraph::hash(std::span<const Vertex> e) {
    std::uint64_t h = 0x84222325cbf29ce4ULL ^ e.size();
    for (Vertex v : e) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::optional<std::size_t> Hypergraph::find(std::span<const Vertex> e) const {
    auto [lo, hi] = index_.equal_range(hash(e));
    for (auto it = lo; it != hi; ++it) {
        const Edge& cand = edges_[it->second];
        if (std::equal(cand.begin(), cand.end(), e.begin(), e.end())) return it->second;
    }
    return std::nullopt;
}

std::optional<Weight> Hypergraph::weight(std::span<const Vertex> e) const {
    auto i = find(e);
    if (!i) return std::nullopt;
    return weight_at(*i);
}

bool Hypergraph::has_unsorted(std::span<const Vertex> e) const {
    Vertex buf[16];
    if (e.size() > 16) {
        Edge tmp(e.begin(), e.end());
        std::sort(tmp.begin(), tmp.end());
        return has_edge(tmp);
    }
    std::copy(e.begin(), e.end(), buf);
    std::sort(buf, buf + e.size());
    return has_edge(std::span<const Vertex>(buf, e.size()));
}

void Hypergraph::add_edge(Edge e, Weight w) {
    if (!insert(std::move(e), w)) throw std::invalid_argument("duplicate hyperedge");
}

void Hypergraph::reserve(std::size_t edges) {
    edges_.reserve(edges);
    if (weighted_) weights_.reserve(edges);
    index_.reserve(edges);
}

bool Hypergraph::insert(Edge e, Weight w) {
    if (!allows_size(e.size())) throw std::invalid_argument("hyperedge size not in profile");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= n_) throw std::invalid_argument("hyperedge vertex out of range");
        if (i > 0 && e[i - 1] >= e[i])
            throw std::invalid_argument("hyperedge vertices must be strictly increasing");
    }
    if (find(e)) return false;
    const std::uint64_t h = hash(e);
    std::uint64_t z = h + static_cast<std::uint64_t>(w) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 31)) * 0xbf58476d1ce4e5b9ULL;
    digest_ += z ^ (z >> 29);
    index_.emplace(h, static_cast<std::uint32_t>(edges_.size()));
    edges_.push_back(std::move(e));
    if (weighted_) weights_.push_back(w);
    return true;
}

bool Hypergraph::operator==(const Hypergraph& other) const {
    if (n_ != other.n_ || sizes_ != other.sizes_ || weighted_ != other.weighted_ ||
        edges_.size() != other.edges_.size())
        return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto j = other.find(edges_[i]);
        if (!j || weight_at(i) != other.weight_at(*j)) return false;
    }
    return true;
}

std::uint64_t Hypergraph::fingerprint() const {
    return digest_ ^ (n_ * 0xd6e8feb86659fd93ULL) ^ (edges_.size() << 40);
}

std::vector<std::vector<Vertex>> CircleLayout::parts() const {
    std::vector<std::vector<Vertex>> out(k);
    for (std::size_t v = 0; v < part_of.size(); ++v) out.at(part_of[v]).push_back(static_cast<Vertex>(v));
    return out;
}

std::vector<std::size_t> CircleLayout::part_sizes() const {
    std::vector<std::size_t> out(k, 0);
    for (auto p : part_of) ++out.at(p);
    return out;
}

CircleLayout block_layout(std::size_t n_per_part, std::size_t k) {
    CircleLayout l;
    l.k = k;
    l.part_of.resize(n_per_part * k);
    for (std::size_t v = 0; v < l.part_of.size(); ++v) l.part_of[v] = v / n_per_part;
    return l;
}

std::optional<std::uint32_t> slot_of(const CircleLayout& layout, std::span<const Vertex> e) {
    std::uint32_t mask = 0;
    for (Vertex v : e) {
        if (v >= layout.part_of.size()) return std::nullopt;
        const std::uint32_t bit = 1u << layout.part_of[v];
        if (mask & bit) return std::nullopt;
        mask |= bit;
    }
    return mask;
}

std::optional<std::size_t> window_start(const CircleLayout& layout, std::span<const Vertex> e,
                                        std::size_t u) {
    if (e.size() != u || u > layout.k || u == 0) return std::nullopt;
    auto mask = slot_of(layout, e);
    if (!mask) return std::nullopt;
    const std::size_t k = layout.k;
    if (u == k) return std::size_t{0};
    for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t w = 0;
        for (std::size_t j = 0; j < u; ++j) w |= 1u << ((i + j) % k);
        if (w == *mask) return i;
    }
    return std::nullopt;
}

bool validate_circle_layered(const Hypergraph& g, const CircleLayout& layout, std::size_t u) {
    if (layout.part_of.size() != g.n() || layout.k == 0 || layout.k > 32) return false;
    for (auto p : layout.part_of)
        if (p >= layout.k) return false;
    for (const auto& e : g.edges())
        if (!window_start(layout, e, u)) return false;
    return true;
}

bool is_kpartite(const Hypergraph& g, const CircleLayout& layout) {
    if (layout.part_of.size() != g.n()) return false;
    for (const auto& e : g.edges())
        if (!slot_of(layout, e)) return false;
    return true;
}

Hypergraph restrict_to_slots(const Hypergraph& g, const CircleLayout& layout,
                             std::span<const std::uint32_t> slots) {
    Hypergraph out(g.n(), g.sizes(), g.weighted());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        auto s = slot_of(layout, g.edge(i));
        if (s && std::find(slots.begin(), slots.end(), *s) != slots.end())
            out.add_edge(g.edge(i), g.weight_at(i));
    }
    return out;
}

}  // namespace hck
