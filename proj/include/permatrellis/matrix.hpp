#pragma once

#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace permatrellis {

/// Dense square matrix. Entries are accessed 1-based (i, j in [n]) to stay
/// close to the usual permanent indexing a_{ij}.
template <typename V>
struct Matrix {
    int n = 0;
    std::vector<V> entries;  // row-major

    Matrix() = default;
    explicit Matrix(int n_, const V& fill = V()) : n(n_), entries(std::size_t(n_) * n_, fill) {
        if (n_ < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    }

    V& at(int i, int j) { return entries[std::size_t(i - 1) * n + (j - 1)]; }
    const V& at(int i, int j) const { return entries[std::size_t(i - 1) * n + (j - 1)]; }

    static Matrix identity(int n_) {
        Matrix m(n_, V(0));
        for (int i = 1; i <= n_; ++i) m.at(i, i) = V(1);
        return m;
    }
};

using RationalMatrix = Matrix<Rational>;

}  // namespace permatrellis
