#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hck/hypergraph.hpp"

namespace hck {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    T* row(std::size_t r) { return data_.data() + r * cols_; }
    const T* row(std::size_t r) const { return data_.data() + r * cols_; }
    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CountMatrix = Matrix<std::uint64_t>;
using WeightMatrix = Matrix<Weight>;

enum class MatmulBackend { naive, strassen };

// Exact product. Throws std::invalid_argument on a dimension mismatch and
// OverflowError if a true entry exceeds uint64.
CountMatrix matmul(const CountMatrix& a, const CountMatrix& b,
                   MatmulBackend backend = MatmulBackend::naive);

// (min, +) product with kInfWeight as the absorbing element.
WeightMatrix minplus(const WeightMatrix& a, const WeightMatrix& b);

}  // namespace hck
