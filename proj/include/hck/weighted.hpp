#pragma once

#include "hck/cycle.hpp"
#include "hck/hypergraph.hpp"
#include "hck/matrix.hpp"

namespace hck {

// Same index spaces as ReachMatrix; cells hold minimum hyperpath weights or kInfWeight.
struct MinReachMatrix {
    std::size_t u = 0;
    std::size_t k = 0;
    WeightMatrix cells;
};

// Minimum over all cyclic sequences of k distinct vertices (free mode).
Weight min_naive(const Hypergraph& g, std::size_t u, std::size_t k);

// Minimum over one-vertex-per-partition cycles by direct search.
Weight min_layered_enum(const Hypergraph& g, const CircleLayout& layout, std::size_t u);

// First 2u-1 partitions; layout.k >= 2u-1.
MinReachMatrix wclr_base(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                         OpCounters* counters = nullptr);

MinReachMatrix weclr_extend(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t k,
                            const MinReachMatrix& prev, OpCounters* counters = nullptr);

// min over cells of reach + the u-1 wrap window weights.
Weight wclose_cycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u, const MinReachMatrix& reach);

// One color-coding trial on an already layered graph: base, extends, close.
Weight min_layered_dp(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                      OpCounters* counters = nullptr);

enum class MinAlgo {
    automatic,    // naive below 2u-1, color-coded DP otherwise
    naive,
    color_coded,  // color coding at every k; per trial DP when k >= 2u-1, else enumeration
};

struct MinResult {
    Weight weight = kInfWeight;
    std::size_t trials = 0;
    bool color_coded = false;
};

MinResult min_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k, double delta_fail, std::uint64_t seed,
                         MinAlgo algo = MinAlgo::automatic, OpCounters* counters = nullptr);

}  // namespace hck
