#pragma once

// Small exact linear algebra over Q and Z: matrix products, null spaces,
// inverses, Hermite normal form bases and integer kernels.

#include <cvl/arith.hpp>

#include <cstddef>
#include <vector>

namespace cvl::linalg {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;
using IntMatrix = std::vector<std::vector<BigInt>>;

inline RatMatrix zeros(std::size_t rows, std::size_t cols) { return RatMatrix(rows, RatVector(cols, Rational(0))); }

inline RatMatrix identity(std::size_t n) {
    RatMatrix m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c = zeros(a.size(), b.empty() ? 0 : b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    }
    return c;
}

inline RatVector apply(const RatMatrix& a, const RatVector& v) {
    RatVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    }
    return out;
}

inline RatMatrix subtract(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
    }
    return c;
}

inline RatMatrix transpose(const RatMatrix& a) {
    if (a.empty()) return {};
    RatMatrix t = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    }
    return t;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

/// Basis of {v : m v = 0}.
inline std::vector<RatVector> nullspace(RatMatrix m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline RatMatrix inverse(const RatMatrix& a) {
    const std::size_t n = a.size();
    RatMatrix aug = zeros(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = row_reduce(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvariantViolation("inverse: singular matrix");
    RatMatrix inv = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    }
    return inv;
}

inline Rational determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Nonzero rows of the (row-style) Hermite normal form of an integer matrix.
inline IntMatrix hermite_basis(IntMatrix rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                BigInt q = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0) {
                for (auto& x : rows[r]) x = -x;
            }
            for (std::size_t i = 0; i < r; ++i) {
                BigInt q = rows[i][c] / rows[r][c];
                if (rows[i][c] - q * rows[r][c] < 0) --q;
                if (q != 0) {
                    for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                }
            }
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

/// Hermite basis of the Z-span of rational row vectors.
inline RatMatrix lattice_basis(const RatMatrix& generators) {
    if (generators.empty()) return {};
    BigInt den = 1;
    for (const auto& row : generators) {
        for (const auto& x : row) den = boost::multiprecision::lcm(den, denominator(x));
    }
    IntMatrix ints;
    for (const auto& row : generators) {
        std::vector<BigInt> r;
        for (const auto& x : row) r.push_back(numerator(Rational(x * den)));
        ints.push_back(std::move(r));
    }
    RatMatrix out;
    for (const auto& row : hermite_basis(std::move(ints))) {
        RatVector r;
        for (const auto& x : row) r.emplace_back(x, den);
        out.push_back(std::move(r));
    }
    return out;
}

/// Basis of the integer vectors v with sum_k row[k] v_k = 0.
inline std::vector<std::vector<BigInt>> integer_kernel(const std::vector<BigInt>& row) {
    const std::size_t n = row.size();
    // Column operations on [row; I] until row = (g, 0, ..., 0).
    std::vector<BigInt> top = row;
    IntMatrix u(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1; // column j of u is u[*][j]
    auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
        top[dst] -= q * top[src];
        for (std::size_t i = 0; i < n; ++i) u[i][dst] -= q * u[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        std::swap(top[x], top[y]);
        for (std::size_t i = 0; i < n; ++i) std::swap(u[i][x], u[i][y]);
    };
    for (;;) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (top[j] != 0 && (best == n || abs(top[j]) < abs(top[best]))) best = j;
        }
        if (best == n) break;
        col_swap(0, best);
        bool done = true;
        for (std::size_t j = 1; j < n; ++j) {
            if (top[j] == 0) continue;
            col_op(j, 0, top[j] / top[0]);
            if (top[j] != 0) done = false;
        }
        if (done) break;
    }
    std::vector<std::vector<BigInt>> kernel;
    const std::size_t start = (top[0] == 0) ? 0 : 1;
    for (std::size_t j = start; j < n; ++j) {
        std::vector<BigInt> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i][j];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

} // namespace cvl::linalg
