#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hck/generate.hpp"
#include "hck/hypergraph.hpp"
#include "hck/pattern.hpp"

namespace hck {

// Windows of width gamma(u, k) on the k-circle (deduplicated, by start) and the
// u-subsets of positions each one is responsible for. Each u-subset goes to the
// covering window with the smallest start.
struct CliqueCover {
    std::size_t u = 0, k = 0, width = 0;
    std::vector<Mask> windows;
    std::vector<std::vector<Mask>> assigned;
};

CliqueCover clique_cover(std::size_t u, std::size_t k);

// u-uniform k-partite g -> gamma(u, k)-uniform k-circle-layered graph on the same
// vertices. A window edge exists iff all its assigned u-subsets are edges of g; its
// weight is their total. Windows with nothing assigned are complete with weight 0.
PartiteGraph hyperclique_to_hypercycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u);

// Extends every edge on window i to all completions over partitions i+u..i+u_target-1.
// Requires u < u_target, k % u_target != 0 and u_target < k < 2 u_target.
Hypergraph lift_uniformity(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t u_target);

// Counts copies of the identity-labeled pattern hT in an hT-partite graph.
using HPartiteCounter = std::function<std::uint64_t(const PatternGraph& hT, const PartiteGraph& gT)>;

struct HkResult {
    std::uint64_t count = 0;
    std::size_t calls = 0;       // counter invocations
    std::size_t selections = 0;  // distinct slot sets tried (including skipped ones)
};

// #HK via #H: each distinct image T of the pattern's slots under a vertex-to-partition
// bijection, with g restricted to T. Slot sets with an empty slot contribute nothing and
// are skipped without a call.
HkResult hk_to_h(const PatternGraph& h, const PartiteGraph& g, const HPartiteCounter& counter);

}  // namespace hck
