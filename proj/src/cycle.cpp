#include "hck/cycle.hpp"

#include <cmath>
#include <stdexcept>

#include "hck/checked.hpp"
#include "layered_tables.hpp"

namespace hck {

using detail::build_window_tables;
using detail::Locals;
using detail::TupleIndex;
using detail::WindowTable;

TrianglePartitions triangle_partitions(std::size_t k) {
    if (k < 3) throw std::invalid_argument("triangle partitions need k >= 3");
    TrianglePartitions t;
    t.k = k;
    t.delta = (k + 2) / 3;
    // Gaps delta, ceil((k-delta)/2), floor((k-delta)/2). For k = 4 the literal
    // positions 0, delta, 2*delta would collide.
    t.pos = {0, t.delta, t.delta + (k - t.delta + 1) / 2};
    return t;
}

const char* to_string(CycleAlgo a) {
    switch (a) {
        case CycleAlgo::automatic: return "auto";
        case CycleAlgo::brute: return "brute";
        case CycleAlgo::triangle: return "triangle";
        case CycleAlgo::clr: return "clr";
    }
    return "?";
}

CycleAlgo parse_cycle_algo(const std::string& s) {
    if (s == "auto") return CycleAlgo::automatic;
    if (s == "brute") return CycleAlgo::brute;
    if (s == "triangle") return CycleAlgo::triangle;
    if (s == "clr") return CycleAlgo::clr;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

bool triangle_applies(std::size_t u, std::size_t k) { return k >= 3 && k > gamma_inverse(3, u); }
bool clr_applies(std::size_t u, std::size_t k) { return k >= 2 * u - 1; }

CycleAlgo choose_algo(std::size_t u, std::size_t k) {
    if (u < 2 || k < u) throw std::invalid_argument("choose_algo: need 2 <= u <= k");
    if (k <= gamma_inverse(3, u)) return CycleAlgo::brute;
    if (k < 2 * u - 1) return CycleAlgo::triangle;
    return CycleAlgo::clr;
}

namespace {

void check_params(const CircleLayout& layout, std::size_t u) {
    if (u < 2 || u > kMaxUniformity) throw std::invalid_argument("uniformity must be in [2, 6]");
    if (layout.k < u) throw std::invalid_argument("layout.k must be at least u");
}

// Table index of window t given the current local index of every position.
std::size_t lookup(const WindowTable& t, const std::vector<std::size_t>& cur) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < t.pos.size(); ++j) idx += t.stride[j] * cur[t.pos[j]];
    return idx;
}

bool in_window(std::size_t s, std::size_t p, std::size_t u, std::size_t k) { return (p + k - s) % k < u; }

bool has_empty_part(const Locals& loc) {
    for (auto s : loc.size)
        if (s == 0) return true;
    return false;
}

void clamp(CountMatrix& m) {
    for (auto& v : m.data()) v = v ? 1 : 0;
}

// Odometer over the given positions; f() is called with cur updated.
template <class F>
void for_each_assignment(const std::vector<std::size_t>& positions, const Locals& loc, std::vector<std::size_t>& cur,
                         F&& f) {
    for (auto p : positions) {
        if (loc.size[p] == 0) return;
        cur[p] = 0;
    }
    while (true) {
        f();
        std::size_t j = positions.size();
        while (j > 0) {
            --j;
            if (++cur[positions[j]] < loc.size[positions[j]]) break;
            cur[positions[j]] = 0;
            if (j == 0) return;
        }
        if (positions.empty()) return;
    }
}

}  // namespace

std::uint64_t count_layered_enum(const Hypergraph& g, const CircleLayout& layout, std::size_t u) {
    check_params(layout, u);
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    const std::size_t k = layout.k;
    if (has_empty_part(loc)) return 0;
    std::vector<std::size_t> cur(k, 0);
    std::uint64_t count = 0;
    // Depth-first over positions; a window is tested once its last position is set.
    std::size_t d = 0;
    cur[0] = 0;
    auto ok_at = [&](std::size_t depth) {
        if (k == u) return depth + 1 < k || tables[0].present(lookup(tables[0], cur));
        if (depth + 1 >= u && !tables[depth + 1 - u].present(lookup(tables[depth + 1 - u], cur))) return false;
        if (depth + 1 == k)
            for (std::size_t s = k - u + 1; s < k; ++s)
                if (!tables[s].present(lookup(tables[s], cur))) return false;
        return true;
    };
    while (true) {
        if (ok_at(d)) {
            if (d + 1 == k) {
                count = add_checked(count, std::uint64_t{1});
            } else {
                ++d;
                cur[d] = 0;
                continue;
            }
        }
        // Advance to the next candidate, backtracking as needed.
        while (true) {
            if (++cur[d] < loc.size[d]) break;
            if (d == 0) return count;
            --d;
        }
    }
}

std::uint64_t count_via_triangles(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                                  const LayeredOptions& opt) {
    check_params(layout, u);
    const std::size_t k = layout.k;
    if (!triangle_applies(u, k)) throw std::invalid_argument("count_via_triangles: needs k > gamma_inverse(3, u)");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    const auto tp = triangle_partitions(k);
    const std::size_t pa = tp.pos[0], pb = tp.pos[1], pc = tp.pos[2];

    // Assign each window to the fixed check or one of the three bipartite layers.
    std::vector<std::size_t> fixed_w, a_w, b_w, c_w;
    for (std::size_t s = 0; s < k; ++s) {
        const bool ia = in_window(s, pa, u, k), ib = in_window(s, pb, u, k), ic = in_window(s, pc, u, k);
        if (ia && ib && ic) throw InvariantError("window covers all three triangle partitions");
        if (!ia && !ib && !ic) fixed_w.push_back(s);
        else if (ia && !ic) a_w.push_back(s);
        else if (ib && !ia) b_w.push_back(s);
        else c_w.push_back(s);
    }
    std::vector<std::size_t> others;
    for (std::size_t p = 0; p < k; ++p)
        if (p != pa && p != pb && p != pc) others.push_back(p);

    const std::size_t na = loc.size[pa], nb = loc.size[pb], nc = loc.size[pc];
    std::vector<std::size_t> cur(k, 0);
    std::uint64_t total = 0;
    // Layer matrix: entry (x, y) is 1 iff every window in `ws` is present with px = x, py = y.
    auto layer = [&](const std::vector<std::size_t>& ws, std::size_t px, std::size_t py, std::size_t nx,
                     std::size_t ny) {
        CountMatrix m(nx, ny, 1);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) {
                cur[px] = x;
                cur[py] = y;
                for (auto s : ws)
                    if (!tables[s].present(lookup(tables[s], cur))) {
                        m(x, y) = 0;
                        break;
                    }
            }
        return m;
    };
    for_each_assignment(others, loc, cur, [&] {
        if (opt.counters) ++opt.counters->tripartite_builds;
        bool fixed_ok = true;
        for (auto s : fixed_w)
            if (!tables[s].present(lookup(tables[s], cur))) fixed_ok = false;
        const CountMatrix A = layer(a_w, pa, pb, na, nb);
        const CountMatrix B = layer(b_w, pb, pc, nb, nc);
        const CountMatrix C = layer(c_w, pc, pa, nc, na);
        if (!fixed_ok) return;
        const CountMatrix AB = matmul(A, B, opt.backend);
        if (opt.counters) ++opt.counters->matmuls;
        std::uint64_t tr = 0;
        for (std::size_t x = 0; x < na; ++x)
            for (std::size_t z = 0; z < nc; ++z) tr = add_checked(tr, mul_checked(AB(x, z), C(z, x)));
        total = add_checked(total, tr);
    });
    if (opt.mode == ReachMode::detect) return total ? 1 : 0;
    return total;
}

ReachMatrix clr_base(const Hypergraph& g, const CircleLayout& layout, std::size_t u, const LayeredOptions& opt) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (K < 2 * u - 1) throw std::invalid_argument("clr_base: needs at least 2u-1 partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);

    std::vector<std::size_t> lpos, rpos, fixed;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = u; p <= 2 * u - 2; ++p) rpos.push_back(p);
    for (std::size_t p = 1; p + 1 < u; ++p) fixed.push_back(p);
    for (std::size_t p = u; p + 2 < 2 * u; ++p)
        if (p != 2 * u - 2) fixed.push_back(p);
    const TupleIndex L(lpos, loc), R(rpos, loc);
    const std::size_t x0 = 0, v = u - 1, y = 2 * u - 2;
    const std::size_t nx = loc.size[x0], nv = loc.size[v], ny = loc.size[y];

    ReachMatrix out{u, 2 * u - 1, opt.mode, CountMatrix(L.count, R.count, 0)};
    std::vector<std::size_t> cur(K, 0);
    for_each_assignment(fixed, loc, cur, [&] {
        if (opt.counters) ++opt.counters->clr_fixings;
        CountMatrix A(nx, nv, 0), B(nv, ny, 0);
        for (std::size_t b = 0; b < nv; ++b) {
            cur[v] = b;
            bool mid_ok = true;
            for (std::size_t s = 1; s + 1 < u; ++s)
                if (!tables[s].present(lookup(tables[s], cur))) mid_ok = false;
            if (mid_ok)
                for (std::size_t a = 0; a < nx; ++a) {
                    cur[x0] = a;
                    A(a, b) = tables[0].present(lookup(tables[0], cur)) ? 1 : 0;
                }
            for (std::size_t c = 0; c < ny; ++c) {
                cur[y] = c;
                B(b, c) = tables[u - 1].present(lookup(tables[u - 1], cur)) ? 1 : 0;
            }
        }
        CountMatrix P = matmul(A, B, opt.backend);
        if (opt.counters) ++opt.counters->matmuls;
        std::size_t row0 = 0, col0 = 0;
        for (std::size_t j = 1; j < lpos.size(); ++j) row0 += L.stride[j] * cur[lpos[j]];
        for (std::size_t j = 0; j + 1 < rpos.size(); ++j) col0 += R.stride[j] * cur[rpos[j]];
        for (std::size_t a = 0; a < nx; ++a)
            for (std::size_t c = 0; c < ny; ++c) {
                const std::uint64_t val = P(a, c);
                out.cells(row0 + a * L.stride[0], col0 + c * R.stride.back()) =
                    opt.mode == ReachMode::detect ? (val ? 1 : 0) : val;
            }
    });
    return out;
}

ReachMatrix eclr_extend(const Hypergraph& g, const CircleLayout& layout, std::size_t u, std::size_t k,
                        const ReachMatrix& prev, const LayeredOptions& opt) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (k < 2 * u || k > K) throw std::invalid_argument("eclr_extend: needs 2u <= k <= layout.k");
    if (prev.u != u || prev.k + 1 != k) throw std::invalid_argument("eclr_extend: prev must cover k-1 partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);

    std::vector<std::size_t> lpos, in_pos, out_pos;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = k - u; p + 1 < k; ++p) in_pos.push_back(p);
    for (std::size_t p = k - u + 1; p < k; ++p) out_pos.push_back(p);
    const TupleIndex L(lpos, loc), In(in_pos, loc), Out(out_pos, loc);
    if (prev.cells.rows() != L.count || prev.cells.cols() != In.count)
        throw std::invalid_argument("eclr_extend: prev index space mismatch");

    // Transfer (r_1..r_{u-1}) -> (r_2..r_{u-1}, y) along window k-u.
    const WindowTable& t = tables[k - u];
    CountMatrix T(In.count, Out.count, 0);
    for (std::size_t idx = 0; idx < t.w.size(); ++idx) {
        if (!t.present(idx)) continue;
        std::size_t r = 0, c = 0;
        for (std::size_t j = 0; j < u; ++j) {
            const std::size_t d = (idx / t.stride[j]) % loc.size[t.pos[j]];
            if (j + 1 < u) r += In.stride[j] * d;
            if (j > 0) c += Out.stride[j - 1] * d;
        }
        T(r, c) = 1;
    }
    ReachMatrix out{u, k, prev.mode, matmul(prev.cells, T, opt.backend)};
    if (out.mode == ReachMode::detect) clamp(out.cells);
    if (opt.counters) {
        ++opt.counters->matmuls;
        ++opt.counters->eclr_extends;
    }
    return out;
}

std::uint64_t close_cycle(const Hypergraph& g, const CircleLayout& layout, std::size_t u, const ReachMatrix& reach) {
    check_params(layout, u);
    const std::size_t K = layout.k;
    if (reach.k != K || reach.u != u) throw std::invalid_argument("close_cycle: reach must cover all partitions");
    const Locals loc(layout);
    const auto tables = build_window_tables(g, layout, u, loc);
    std::vector<std::size_t> lpos, rpos;
    for (std::size_t p = 0; p + 1 < u; ++p) lpos.push_back(p);
    for (std::size_t p = K - u + 1; p < K; ++p) rpos.push_back(p);
    const TupleIndex L(lpos, loc), R(rpos, loc);
    if (reach.cells.rows() != L.count || reach.cells.cols() != R.count)
        throw std::invalid_argument("close_cycle: index space mismatch");
    std::vector<std::size_t> cur(K, 0);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < L.count; ++r) {
        for (std::size_t j = 0; j < lpos.size(); ++j) cur[lpos[j]] = L.digit(r, j, loc);
        for (std::size_t c = 0; c < R.count; ++c) {
            const std::uint64_t val = reach.cells(r, c);
            if (!val) continue;
            for (std::size_t j = 0; j < rpos.size(); ++j) cur[rpos[j]] = R.digit(c, j, loc);
            bool ok = true;
            for (std::size_t s = K - u + 1; s < K && ok; ++s) ok = tables[s].present(lookup(tables[s], cur));
            if (ok) total = add_checked(total, val);
        }
    }
    return total;
}

std::uint64_t count_via_clr(const Hypergraph& g, const CircleLayout& layout, std::size_t u,
                            const LayeredOptions& opt) {
    const std::size_t K = layout.k;
    if (!clr_applies(u, K)) throw std::invalid_argument("count_via_clr: needs k >= 2u-1");
    ReachMatrix reach = clr_base(g, layout, u, opt);
    for (std::size_t k = 2 * u; k <= K; ++k) reach = eclr_extend(g, layout, u, k, reach, opt);
    const std::uint64_t total = close_cycle(g, layout, u, reach);
    if (opt.mode == ReachMode::detect) return total ? 1 : 0;
    return total;
}

std::uint64_t count_layered(const Hypergraph& g, const CircleLayout& layout, std::size_t u, CycleAlgo algo,
                            const LayeredOptions& opt) {
    if (algo == CycleAlgo::automatic) algo = choose_algo(u, layout.k);
    switch (algo) {
        case CycleAlgo::brute: {
            const auto c = count_layered_enum(g, layout, u);
            return opt.mode == ReachMode::detect ? (c ? 1 : 0) : c;
        }
        case CycleAlgo::triangle: return count_via_triangles(g, layout, u, opt);
        case CycleAlgo::clr: return count_via_clr(g, layout, u, opt);
        default: break;
    }
    throw std::invalid_argument("count_layered: bad algorithm");
}

PartiteGraph color_code(const Hypergraph& g, std::size_t u, std::size_t k, std::uint64_t seed) {
    if (u < 2 || k < u) throw std::invalid_argument("color_code: need 2 <= u <= k");
    if (k > 32) throw std::invalid_argument("color_code: k capped at 32");
    Rng rng(seed);
    CircleLayout layout;
    layout.k = k;
    layout.part_of.resize(g.n());
    for (auto& p : layout.part_of) p = rng.below(k);
    PartiteGraph out{Hypergraph(g.n(), {u}, g.weighted()), layout};
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        if (e.size() == u && window_start(layout, e, u)) out.g.add_edge(e, g.weight_at(i));
    }
    return out;
}

std::size_t color_coding_trials(std::size_t k, double delta_fail) {
    if (!(delta_fail > 0.0 && delta_fail < 1.0)) throw std::invalid_argument("delta_fail must be in (0, 1)");
    const double kk = std::pow(static_cast<double>(k), static_cast<double>(k));
    return static_cast<std::size_t>(std::ceil(kk * std::log(1.0 / delta_fail)));
}

DetectResult detect_hypercycle(const Hypergraph& g, std::size_t u, std::size_t k, double delta_fail,
                               std::uint64_t seed, CycleAlgo algo, OpCounters* counters) {
    DetectResult res;
    res.algo = algo == CycleAlgo::automatic ? choose_algo(u, k) : algo;
    if (res.algo == CycleAlgo::triangle && !triangle_applies(u, k))
        throw std::invalid_argument("detect: triangle algorithm does not apply");
    if (res.algo == CycleAlgo::clr && !clr_applies(u, k)) throw std::invalid_argument("detect: clr does not apply");
    res.trials_planned = color_coding_trials(k, delta_fail);
    LayeredOptions opt;
    opt.mode = ReachMode::detect;
    opt.counters = counters;
    for (std::size_t t = 0; t < res.trials_planned; ++t) {
        ++res.trials_run;
        const auto pg = color_code(g, u, k, derive_seed(seed, t));
        if (count_layered(pg.g, pg.layout, u, res.algo, opt) > 0) {
            res.found = true;
            break;
        }
    }
    return res;
}

}  // namespace hck
