#pragma once

#include <cstdint>
#include <vector>

#include "hck/database.hpp"
#include "hck/hypergraph.hpp"
#include "hck/pattern.hpp"

namespace hck {

// Exhaustive reference counters. Nothing here is shared with the fast algorithms.

constexpr std::size_t kOracleMaxN = 12;      // per partition in layered/partite modes
constexpr std::size_t kOracleMaxFreeN = 20;  // unpartitioned pattern counting

struct CycleCount {
    std::uint64_t count = 0;
    // Layered mode with k % u == 0: cycles revisiting a partition are possible and are
    // not counted.
    bool backward_regime = false;
};

// layout == nullptr: free mode, cycles as vertex sequences up to rotation and
// reflection. Otherwise layered mode: one vertex per partition in circle order.
// k == u counts size-u edges (layered: those with one vertex per partition).
CycleCount brute_count_hypercycles(const Hypergraph& g, std::size_t u, std::size_t k,
                                   const CircleLayout* layout = nullptr);

// Minimum total window-edge weight, kInfWeight if there is no cycle.
Weight brute_min_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k,
                            const CircleLayout* layout = nullptr);

enum class PatternMode {
    h_partite,  // pattern vertex i lands in partition i
    k_partite,  // distinct copies with one vertex per partition, any assignment
    free_er,    // distinct copies anywhere
};

std::uint64_t brute_count_pattern(const PatternGraph& h, const Hypergraph& g, PatternMode mode,
                                  const CircleLayout* layout = nullptr);

// Labeled fragment: label set (pattern vertices / partitions) and edges inside it.
struct LabeledFragment {
    Mask labels = 0;
    std::vector<Mask> edges;
};

// Choices of one vertex from V_l for each label l such that every fragment edge exists.
std::uint64_t brute_count_labeled(const LabeledFragment& l, const Hypergraph& g,
                                  const CircleLayout& layout);

// k-subsets whose u-subsets are all edges. With a layout (layout->k == k), only
// one-vertex-per-partition subsets.
std::uint64_t brute_count_hyperclique(const Hypergraph& g, std::size_t u, std::size_t k,
                                      const CircleLayout* layout = nullptr);

// Minimum total edge weight over one-per-partition k-cliques, kInfWeight if none.
Weight brute_min_hyperclique(const Hypergraph& g, std::size_t u, const CircleLayout& layout);

// Number of assignments of all query variables satisfying every atom.
std::uint64_t brute_scq(const Database& db, const Query& q);

}  // namespace hck
