#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "hck/generate.hpp"
#include "hck/hypergraph.hpp"
#include "hck/matrix.hpp"

namespace hck {

// Three circle positions with gaps as even as possible; the largest gap is
// ceil(k/3) = delta, so no window narrower than gamma(3, k) covers all three.
struct TrianglePartitions {
    std::size_t k = 0;
    std::size_t delta = 0;
    std::array<std::size_t, 3> pos{};
};

TrianglePartitions triangle_partitions(std::size_t k);

enum class CycleAlgo { automatic, brute, triangle, clr };

const char* to_string(CycleAlgo a);
CycleAlgo parse_cycle_algo(const std::string& s);

// brute for k <= gamma_inverse(3, u), triangle below 2u-1, clr from 2u-1 on.
CycleAlgo choose_algo(std::size_t u, std::size_t k);
bool triangle_applies(std::size_t u, std::size_t k);
bool clr_applies(std::size_t u, std::size_t k);

struct OpCounters {
    std::uint64_t tripartite_builds = 0;
    std::uint64_t matmuls = 0;
    std::uint64_t clr_fixings = 0;
    std::uint64_t eclr_extends = 0;
};

enum class ReachMode { count, detect };

// Rows: tuples over partitions 0..u-2; columns: tuples over k-u+1..k-1. Both in
// lexicographic order of partition-local indices.
struct ReachMatrix {
    std::size_t u = 0;
    std::size_t k = 0;
    ReachMode mode = ReachMode::count;
    CountMatrix cells;
};

struct LayeredOptions {
    ReachMode mode = ReachMode::count;
    MatmulBackend backend = MatmulBackend::naive;
    OpCounters* counters = nullptr;
};

// Number of one-vertex-per-partition cycles by direct search over window tables.
std::uint64_t count_layered_enum(const Hypergraph& g, const CircleLayout& layout, std::size_t u);

// Requires k = layout.k > gamma_inverse(3, u).
std::uint64_t count_via_triangles(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                                  const LayeredOptions& opt = {});

// Reachability over the first 2u-1 partitions; layout.k >= 2u-1.
ReachMatrix clr_base(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                     const LayeredOptions& opt = {});

// prev covers the first k-1 partitions; the result covers the first k.
ReachMatrix eclr_extend(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t k,
                        const ReachMatrix& prev, const LayeredOptions& opt = {});

// Sum of reach cells whose u-1 wrap windows exist; reach.k must equal layout.k.
std::uint64_t close_cycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                          const ReachMatrix& reach);

// clr_base, then eclr_extend up to layout.k, then close_cycle.
std::uint64_t count_via_clr(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                            const LayeredOptions& opt = {});

// Dispatch on algo (automatic uses choose_algo). In detect mode the result is only
// meaningful as zero / nonzero.
std::uint64_t count_layered(const Hypergraph& g, const CircleLayout& layout, std::size_t u, CycleAlgo algo,
                            const LayeredOptions& opt = {});

// Uniform colour per vertex; keeps the size-u edges lying on u consecutive colours.
PartiteGraph color_code(const Hypergraph& g, std::size_t u, std::size_t k, std::uint64_t seed);

// ceil(k^k * ln(1/delta_fail)).
std::size_t color_coding_trials(std::size_t k, double delta_fail);

struct DetectResult {
    bool found = false;
    std::size_t trials_run = 0;
    std::size_t trials_planned = 0;
    CycleAlgo algo = CycleAlgo::automatic;
};

// Stops at the first trial that finds a cycle. `found` is never a false positive.
DetectResult detect_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k, double delta_fail,
                               std::uint64_t seed, CycleAlgo algo = CycleAlgo::automatic,
                               OpCounters* counters = nullptr);

}  // namespace hck
