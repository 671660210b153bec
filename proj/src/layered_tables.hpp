#pragma once

// Dense per-window edge tables over partition-local vertex indices. Shared by the
// unweighted and weighted layered algorithms.

#include <stdexcept>
#include <vector>

#include "hck/hypergraph.hpp"

namespace hck::detail {

struct Locals {
    std::vector<std::size_t> local_of;            // vertex -> index inside its partition
    std::vector<std::vector<Vertex>> parts;       // partition -> vertices
    std::vector<std::size_t> size;                // partition -> size

    explicit Locals(const CircleLayout& layout) : local_of(layout.part_of.size()), parts(layout.parts()) {
        for (const auto& p : parts) {
            size.push_back(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) local_of[p[i]] = i;
        }
    }
};

// Window i covers positions i, i+1, ..., i+u-1 (mod k). Entry = edge weight, or
// kInfWeight when the edge is absent. Unweighted edges store 0.
struct WindowTable {
    std::vector<std::size_t> pos;     // partitions in window order
    std::vector<std::size_t> stride;  // stride of each window slot (first slot most significant)
    std::vector<Weight> w;

    std::size_t offset(std::size_t slot_of_window, std::size_t local) const { return stride[slot_of_window] * local; }
    bool present(std::size_t idx) const { return w[idx] != kInfWeight; }
};

// Mixed-radix index over `positions` with the first position most significant.
struct TupleIndex {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> stride;
    std::size_t count = 1;

    TupleIndex(const std::vector<std::size_t>& positions, const Locals& loc) : pos(positions), stride(positions.size()) {
        for (std::size_t j = positions.size(); j-- > 0;) {
            stride[j] = count;
            count *= loc.size[positions[j]];
        }
    }
    // Local index of slot j in tuple index `idx`.
    std::size_t digit(std::size_t idx, std::size_t j, const Locals& loc) const {
        return (idx / stride[j]) % loc.size[pos[j]];
    }
};

// One table per distinct window (k tables, or one when k == u). Throws
// std::invalid_argument if g is not circle-layered under `layout`.
inline std::vector<WindowTable> build_window_tables(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                                                    const Locals& loc) {
    if (!validate_circle_layered(g, layout, u)) throw std::invalid_argument("graph is not circle-layered for this layout");
    const std::size_t k = layout.k;
    const std::size_t windows = (k == u) ? 1 : k;
    std::vector<WindowTable> tables(windows);
    for (std::size_t i = 0; i < windows; ++i) {
        auto& t = tables[i];
        for (std::size_t j = 0; j < u; ++j) t.pos.push_back((i + j) % k);
        TupleIndex ti(t.pos, loc);
        t.stride = ti.stride;
        t.w.assign(ti.count, kInfWeight);
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        const std::size_t i = *window_start(layout, edge, u);
        auto& t = tables[i];
        std::size_t idx = 0;
        for (Vertex v : edge) {
            const std::size_t p = layout.part_of[v];
            const std::size_t slot = (p + k - i) % k;
            idx += t.stride[slot] * loc.local_of[v];
        }
        if (g.weight_at(e) == kInfWeight) throw std::invalid_argument("edge weight equals the infinity sentinel");
        t.w[idx] = g.weight_at(e);
    }
    return tables;
}

}  // namespace hck::detail
