#include "hck/matrix.hpp"

#include <algorithm>

#include "hck/checked.hpp"

namespace hck {

namespace {

using U = std::uint64_t;

// Plain triple loop in wrapping arithmetic.
void naive_into(const U* a, std::size_t lda, const U* b, std::size_t ldb, U* c, std::size_t ldc,
                std::size_t n, std::size_t m, std::size_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        U* ci = c + i * ldc;
        std::fill(ci, ci + p, U{0});
        for (std::size_t t = 0; t < m; ++t) {
            const U av = a[i * lda + t];
            if (av == 0) continue;
            const U* bt = b + t * ldb;
            for (std::size_t j = 0; j < p; ++j) ci[j] += av * bt[j];
        }
    }
}

using Block = std::vector<U>;

Block add(const Block& x, const Block& y) {
    Block r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Block sub(const Block& x, const Block& y) {
    Block r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

// Square power-of-two blocks, row-major, side s.
Block strassen(const Block& a, const Block& b, std::size_t s) {
    if (s <= 32) {
        Block c(s * s);
        naive_into(a.data(), s, b.data(), s, c.data(), s, s, s, s);
        return c;
    }
    const std::size_t h = s / 2;
    auto quad = [&](const Block& m, std::size_t qi, std::size_t qj) {
        Block q(h * h);
        for (std::size_t i = 0; i < h; ++i)
            std::copy_n(m.data() + (qi * h + i) * s + qj * h, h, q.data() + i * h);
        return q;
    };
    const Block a11 = quad(a, 0, 0), a12 = quad(a, 0, 1), a21 = quad(a, 1, 0), a22 = quad(a, 1, 1);
    const Block b11 = quad(b, 0, 0), b12 = quad(b, 0, 1), b21 = quad(b, 1, 0), b22 = quad(b, 1, 1);
    const Block m1 = strassen(add(a11, a22), add(b11, b22), h);
    const Block m2 = strassen(add(a21, a22), b11, h);
    const Block m3 = strassen(a11, sub(b12, b22), h);
    const Block m4 = strassen(a22, sub(b21, b11), h);
    const Block m5 = strassen(add(a11, a12), b22, h);
    const Block m6 = strassen(sub(a21, a11), add(b11, b12), h);
    const Block m7 = strassen(sub(a12, a22), add(b21, b22), h);
    Block c(s * s);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            const std::size_t q = i * h + j;
            c[i * s + j] = m1[q] + m4[q] - m5[q] + m7[q];
            c[i * s + j + h] = m3[q] + m5[q];
            c[(i + h) * s + j] = m2[q] + m4[q];
            c[(i + h) * s + j + h] = m1[q] - m2[q] + m3[q] + m6[q];
        }
    return c;
}

U max_entry(const CountMatrix& m) {
    U best = 0;
    for (U v : m.data()) best = std::max(best, v);
    return best;
}

}  // namespace

CountMatrix matmul(const CountMatrix& a, const CountMatrix& b, MatmulBackend backend) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
    CountMatrix c(n, p);
    if (n == 0 || p == 0) return c;
    // If every true entry fits, ring arithmetic mod 2^64 is exact for both backends.
    const unsigned __int128 bound =
        static_cast<unsigned __int128>(max_entry(a)) * max_entry(b) * static_cast<unsigned __int128>(m);
    if (bound > std::numeric_limits<U>::max()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                U acc = 0;
                for (std::size_t t = 0; t < m; ++t) acc = add_checked(acc, mul_checked(a(i, t), b(t, j)));
                c(i, j) = acc;
            }
        return c;
    }
    if (backend == MatmulBackend::naive || std::max({n, m, p}) <= 32) {
        naive_into(a.row(0), m, b.row(0), p, c.row(0), p, n, m, p);
        return c;
    }
    std::size_t s = 1;
    while (s < std::max({n, m, p})) s *= 2;
    Block pa(s * s, 0), pb(s * s, 0);
    for (std::size_t i = 0; i < n; ++i) std::copy_n(a.row(i), m, pa.data() + i * s);
    for (std::size_t i = 0; i < m; ++i) std::copy_n(b.row(i), p, pb.data() + i * s);
    const Block pc = strassen(pa, pb, s);
    for (std::size_t i = 0; i < n; ++i) std::copy_n(pc.data() + i * s, p, c.row(i));
    return c;
}

WeightMatrix minplus(const WeightMatrix& a, const WeightMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("minplus: dimension mismatch");
    WeightMatrix c(a.rows(), b.cols(), kInfWeight);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Weight av = a(i, t);
            if (av == kInfWeight) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = std::min(c(i, j), add_inf(av, b(t, j)));
        }
    return c;
}

}  // namespace hck
