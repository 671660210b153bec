#include "hck/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace hck {

void RandomSpec::validate() const {
    if (b < 2) throw std::invalid_argument("RandomSpec: b must be at least 2");
    if (mu && !(*mu > 0.0 && *mu < 1.0)) throw std::invalid_argument("RandomSpec: mu must be in (0, 1)");
}

Hypergraph gen_er(std::size_t n, std::span<const std::size_t> sizes, const RandomSpec& spec) {
    spec.validate();
    std::vector<std::size_t> sz(sizes.begin(), sizes.end());
    for (auto s : sz)
        if (s > n) throw std::invalid_argument("gen_er: n must be at least every edge size");
    Hypergraph g(n, sz);
    Rng rng(spec.seed);
    for (auto s : g.sizes())
        for_each_subset(n, s, [&](std::span<const Vertex> e) {
            if (spec.draw(rng)) g.add_edge(Edge(e.begin(), e.end()));
        });
    return g;
}

static std::vector<std::size_t> slot_sizes(std::span<const Mask> slots) {
    std::vector<std::size_t> sizes;
    for (Mask m : slots) sizes.push_back(popcount(m));
    return sizes;
}

PartiteGraph gen_kpartite_er(std::size_t n_per_part, std::size_t k, std::span<const Mask> slots,
                             const RandomSpec& spec) {
    spec.validate();
    if (k == 0 || k > 32) throw std::invalid_argument("gen_kpartite_er: k out of range");
    for (Mask m : slots) {
        if (popcount(m) < 2) throw std::invalid_argument("gen_kpartite_er: slots need at least 2 partitions");
        if (k < 32 && (m >> k)) throw std::invalid_argument("gen_kpartite_er: slot outside [0, k)");
    }
    PartiteGraph out{Hypergraph(n_per_part * k, slot_sizes(slots)), block_layout(n_per_part, k)};
    const auto parts = out.layout.parts();
    Rng rng(spec.seed);
    std::vector<Mask> sorted(slots.begin(), slots.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Mask m : sorted)
        for_each_slot_edge(parts, m, [&](std::span<const Vertex> e) {
            if (spec.draw(rng)) out.g.add_edge(Edge(e.begin(), e.end()));
        });
    return out;
}

std::uint64_t kpartite_candidate_count(std::size_t n_per_part, std::span<const Mask> slots) {
    std::uint64_t total = 0;
    for (Mask m : slots) {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < popcount(m); ++i) c *= n_per_part;
        total += c;
    }
    return total;
}

std::vector<Mask> window_masks(std::size_t k, std::size_t u) {
    std::vector<Mask> out;
    for (std::size_t i = 0; i < k; ++i) {
        Mask m = 0;
        for (std::size_t j = 0; j < u; ++j) m |= 1u << ((i + j) % k);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

PartiteGraph gen_circle_layered(std::size_t n_per_part, std::size_t k, std::size_t u,
                                const RandomSpec& spec) {
    if (u < 2 || u > k) throw std::invalid_argument("gen_circle_layered: need 2 <= u <= k");
    const auto slots = window_masks(k, u);
    return gen_kpartite_er(n_per_part, k, slots, spec);
}

Hypergraph plant_sequence(const Hypergraph& g, std::span<const Vertex> seq, std::size_t u,
                          Weight w) {
    const std::size_t k = seq.size();
    if (k < u) throw std::invalid_argument("plant: sequence shorter than u");
    Hypergraph out = g;
    const std::size_t windows = (k == u) ? 1 : k;
    for (std::size_t i = 0; i < windows; ++i) {
        Edge e;
        for (std::size_t j = 0; j < u; ++j) e.push_back(seq[(i + j) % k]);
        std::sort(e.begin(), e.end());
        out.insert(std::move(e), w);
    }
    return out;
}

Hypergraph plant_hypercycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                            std::uint64_t seed, std::vector<Vertex>* chosen, Weight w) {
    if (layout.k < u) throw std::invalid_argument("plant_hypercycle: k must be at least u");
    if (!validate_circle_layered(g, layout, u))
        throw std::invalid_argument("plant_hypercycle: layout is not a valid circle layout");
    const auto parts = layout.parts();
    Rng rng(seed);
    std::vector<Vertex> seq;
    for (const auto& p : parts) {
        if (p.empty()) throw std::invalid_argument("plant_hypercycle: empty partition");
        seq.push_back(p[rng.below(p.size())]);
    }
    if (chosen) *chosen = seq;
    return plant_sequence(g, seq, u, w);
}

Hypergraph with_random_weights(const Hypergraph& g, Weight lo, Weight hi, std::uint64_t seed) {
    if (lo > hi) throw std::invalid_argument("with_random_weights: empty range");
    Hypergraph out(g.n(), g.sizes(), true);
    Rng rng(seed);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    for (const auto& e : g.edges()) out.add_edge(e, lo + static_cast<Weight>(rng.below(span)));
    return out;
}

}  // namespace hck
