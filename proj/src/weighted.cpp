#include "hck/weighted.hpp"

#include <algorithm>
#include <stdexcept>

#include "hck/checked.hpp"
#include "layered_tables.hpp"

namespace hck {

using detail::build_window_tables;
using detail::Locals;
using detail::TupleIndex;
using detail::WindowTable;

namespace {

void check_params(const CircleLayout& layout, std::size_t u) {
    if (u < 2 || u > kMaxUniformity) throw std::invalid_argument("uniformity must be in [2, 6]");
    if (layout.k < u) throw std::invalid_argument("layout.k must be at least u");
}

Weight at(const WindowTable& t, const std::vector<std::size_t>& cur) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < t.pos.size(); ++j) idx += t.stride[j] * cur[t.pos[j]];
    return t.w[idx];
}

}  // namespace

Weight min_naive(const Hypergraph& g, std::size_t u, std::size_t k) {
    if (u < 2 || k < u) throw std::invalid_argument("min_naive: need 2 <= u <= k");
    Weight best = kInfWeight;
    if (k == u) {
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            if (g.edge(i).size() == u) best = std::min(best, g.weight_at(i));
        return best;
    }
    std::vector<Vertex> seq(k);
    std::vector<Weight> prefix(k + 1, 0);  // weight of the windows completed so far
    std::vector<bool> used(g.n(), false);
    Edge buf(u);
    auto window_weight = [&](std::size_t s, std::size_t len) -> Weight {
        for (std::size_t j = 0; j < u; ++j) buf[j] = seq[(s + j) % len];
        std::sort(buf.begin(), buf.end());
        auto w = g.weight(buf);
        return w ? *w : kInfWeight;
    };
    std::size_t d = 0;
    std::vector<Vertex> next(k, 0);
    while (true) {
        if (next[d] >= g.n()) {
            if (d == 0) return best;
            --d;
            used[seq[d]] = false;
            continue;
        }
        const Vertex v = next[d]++;
        if (used[v]) continue;
        seq[d] = v;
        Weight w = prefix[d];
        if (d + 1 >= u) w = add_inf(w, window_weight(d + 1 - u, k));
        if (w == kInfWeight) continue;
        if (d + 1 == k) {
            for (std::size_t s = k - u + 1; s < k && w != kInfWeight; ++s) w = add_inf(w, window_weight(s, k));
            best = std::min(best, w);
            continue;
        }
        used[v] = true;
        prefix[d + 1] = w;
        ++d;
        next[d] = 0;
    }
}

Weight min_layered_enum(const Hypergraph& g, const CircleLayout& layout, std::size_t u) {
    check_params(layout, u);
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    const std::size_t k = layout.k;
    for (auto s : loc.size)
        if (s == 0) return kInfWeight;
    Weight best = kInfWeight;
    std::vector<std::size_t> cur(k, 0);
    std::vector<Weight> prefix(k + 1, 0);
    std::size_t d = 0;
    while (true) {
        Weight w = prefix[d];
        if (k == u) {
            if (d + 1 == k) w = add_inf(w, at(tables[0], cur));
        } else {
            if (d + 1 >= u) w = add_inf(w, at(tables[d + 1 - u], cur));
            if (d + 1 == k)
                for (std::size_t s = k - u + 1; s < k && w != kInfWeight; ++s) w = add_inf(w, at(tables[s], cur));
        }
        if (w != kInfWeight) {
            if (d + 1 == k) {
                best = std::min(best, w);
            } else {
                prefix[d + 1] = w;
                ++d;
                cur[d] = 0;
                continue;
            }
        }
        while (true) {
            if (++cur[d] < loc.size[d]) break;
            if (d == 0) return best;
            --d;
        }
    }
}

MinReachMatrix wclr_base(const Hypergraph& g, const CircleLayout& layout, std::size_t u, OpCounters* counters) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (K < 2 * u - 1) throw std::invalid_argument("wclr_base: needs at least 2u-1 partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    std::vector<std::size_t> lpos, rpos;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = u; p <= 2 * u - 2; ++p) rpos.push_back(p);
    const TupleIndex L(lpos, loc), R(rpos, loc);
    MinReachMatrix out{u, 2 * u - 1, WeightMatrix(L.count, R.count, kInfWeight)};
    // Every L tuple combined with every edge on window u-1 fixes the whole path.
    const WindowTable& last = tables[u - 1];
    std::vector<std::size_t> cur(K, 0);
    for (std::size_t idx = 0; idx < last.w.size(); ++idx) {
        if (!last.present(idx)) continue;
        std::size_t col = 0;
        for (std::size_t j = 0; j < u; ++j) {
            const std::size_t d = (idx / last.stride[j]) % loc.size[last.pos[j]];
            cur[last.pos[j]] = d;
            if (j > 0) col += R.stride[j - 1] * d;
        }
        for (std::size_t row = 0; row < L.count; ++row) {
            for (std::size_t j = 0; j < lpos.size(); ++j) cur[lpos[j]] = L.digit(row, j, loc);
            Weight w = last.w[idx];
            for (std::size_t s = 0; s + 1 < u && w != kInfWeight; ++s) w = add_inf(w, at(tables[s], cur));
            if (w < out.cells(row, col)) out.cells(row, col) = w;
        }
    }
    if (counters) ++counters->clr_fixings;
    return out;
}

MinReachMatrix weclr_extend(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t k,
                            const MinReachMatrix& prev, OpCounters* counters) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (k < 2 * u || k > K) throw std::invalid_argument("weclr_extend: needs 2u <= k <= layout.k");
    if (prev.u != u || prev.k + 1 != k) throw std::invalid_argument("weclr_extend: prev must cover k-1 partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    std::vector<std::size_t> lpos, in_pos, out_pos;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = k - u; p + 1 < k; ++p) in_pos.push_back(p);
    for (std::size_t p = k - u + 1; p < k; ++p) out_pos.push_back(p);
    const TupleIndex L(lpos, loc), In(in_pos, loc), Out(out_pos, loc);
    if (prev.cells.rows() != L.count || prev.cells.cols() != In.count)
        throw std::invalid_argument("weclr_extend: prev index space mismatch");
    MinReachMatrix out{u, k, WeightMatrix(L.count, Out.count, kInfWeight)};
    // new(l, r_k) = min over edges e on the last u partitions of prev(l, r_{k-1}) + w(e).
    const WindowTable& t = tables[k - u];
    for (std::size_t idx = 0; idx < t.w.size(); ++idx) {
        if (!t.present(idx)) continue;
        std::size_t pc = 0, nc = 0;
        for (std::size_t j = 0; j < u; ++j) {
            const std::size_t d = (idx / t.stride[j]) % loc.size[t.pos[j]];
            if (j + 1 < u) pc += In.stride[j] * d;
            if (j > 0) nc += Out.stride[j - 1] * d;
        }
        const Weight w = t.w[idx];
        for (std::size_t row = 0; row < L.count; ++row) {
            const Weight cand = add_inf(prev.cells(row, pc), w);
            if (cand < out.cells(row, nc)) out.cells(row, nc) = cand;
        }
    }
    if (counters) ++counters->eclr_extends;
    return out;
}

Weight wclose_cycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u, const MinReachMatrix& reach) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (reach.k != K || reach.u != u) throw std::invalid_argument("wclose_cycle: reach must cover all partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    std::vector<std::size_t> lpos, rpos;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = K - u + 1; p < K; ++p) rpos.push_back(p);
    const TupleIndex L(lpos, loc), R(rpos, loc);
    if (reach.cells.rows() != L.count || reach.cells.cols() != R.count)
        throw std::invalid_argument("wclose_cycle: index space mismatch");
    std::vector<std::size_t> cur(K, 0);
    Weight best = kInfWeight;
    for (std::size_t r = 0; r < L.count; ++r) {
        for (std::size_t j = 0; j < lpos.size(); ++j) cur[lpos[j]] = L.digit(r, j, loc);
        for (std::size_t c = 0; c < R.count; ++c) {
            Weight w = reach.cells(r, c);
            if (w == kInfWeight) continue;
            for (std::size_t j = 0; j < rpos.size(); ++j) cur[rpos[j]] = R.digit(c, j, loc);
            for (std::size_t s = K - u + 1; s < K && w != kInfWeight; ++s) w = add_inf(w, at(tables[s], cur));
            best = std::min(best, w);
        }
    }
    return best;
}

Weight min_layered_dp(const Hypergraph& g, const CircleLayout& layout, std::size_t u, OpCounters* counters) {
    const std::size_t K = layout.k;
    if (K < 2 * u - 1) throw std::invalid_argument("min_layered_dp: needs k >= 2u-1");
    MinReachMatrix reach = wclr_base(g, layout, u, counters);
    for (std::size_t k = 2 * u; k <= K; ++k) reach = weclr_extend(g, layout, u, k, reach, counters);
    return wclose_cycle(g, layout, u, reach);
}

MinResult min_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k, double delta_fail, std::uint64_t seed,
                         MinAlgo algo, OpCounters* counters) {
    if (u < 2 || k < u) throw std::invalid_argument("min_hypercycle: need 2 <= u <= k");
    if (algo == MinAlgo::automatic) algo = (k < 2 * u - 1) ? MinAlgo::naive : MinAlgo::color_coded;
    MinResult res;
    if (algo == MinAlgo::naive) {
        res.weight = min_naive(g, u, k);
        return res;
    }
    res.color_coded = true;
    const std::size_t trials = color_coding_trials(k, delta_fail);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto pg = color_code(g, u, k, derive_seed(seed, t));
        const Weight w = (k >= 2 * u - 1) ? min_layered_dp(pg.g, pg.layout, u, counters)
                                          : min_layered_enum(pg.g, pg.layout, u);
        res.weight = std::min(res.weight, w);
        ++res.trials;
    }
    return res;
}

}  // namespace hck
