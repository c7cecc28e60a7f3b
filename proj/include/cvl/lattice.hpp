#pragma once

// Exact enumeration of vectors of a positive definite integral lattice.
//
// A lattice is described by an integer symmetric matrix A and the values
// q(v) = v^T A v. Outer coordinates are bounded with a floating Cholesky
// decomposition (widened, so nothing is lost); the innermost coordinate range
// is solved exactly with integer square roots, so every reported count is exact.

#include <cvl/arith.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace cvl::lattice {

template <std::size_t Dim>
using Gram = std::array<std::array<std::int64_t, Dim>, Dim>;

template <std::size_t Dim>
using Transform = std::array<std::array<std::int64_t, Dim>, Dim>; // rows = new basis in old coordinates

template <std::size_t Dim>
std::int64_t evaluate(const Gram<Dim>& a, const std::array<std::int64_t, Dim>& v) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < Dim; ++i) {
        for (std::size_t j = 0; j < Dim; ++j) s += a[i][j] * v[i] * v[j];
    }
    return s;
}

template <std::size_t Dim>
BigInt determinant(const Gram<Dim>& a) {
    std::vector<std::vector<Rational>> m(Dim, std::vector<Rational>(Dim));
    for (std::size_t i = 0; i < Dim; ++i) {
        for (std::size_t j = 0; j < Dim; ++j) m[i][j] = a[i][j];
    }
    Rational det = 1;
    for (std::size_t c = 0; c < Dim; ++c) {
        std::size_t p = c;
        while (p < Dim && m[p][c] == 0) ++p;
        if (p == Dim) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < Dim; ++i) {
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < Dim; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return numerator(det);
}

/// Greedy pairwise size reduction, then sort by diagonal. Returns the
/// unimodular transform taking the old basis to the new one.
template <std::size_t Dim>
Transform<Dim> reduce(Gram<Dim>& a) {
    Transform<Dim> u{};
    for (std::size_t i = 0; i < Dim; ++i) u[i][i] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < Dim; ++i) {
            for (std::size_t j = 0; j < Dim; ++j) {
                if (i == j || 2 * std::llabs(a[i][j]) <= a[j][j]) continue;
                // b_i -= k b_j with k the nearest integer to a_ij / a_jj.
                const double ratio = static_cast<double>(a[i][j]) / static_cast<double>(a[j][j]);
                const auto k = static_cast<std::int64_t>(std::llround(ratio));
                if (k == 0) continue;
                const std::int64_t aij = a[i][j];
                for (std::size_t l = 0; l < Dim; ++l) {
                    if (l == i) continue;
                    a[i][l] -= k * a[j][l];
                    a[l][i] = a[i][l];
                }
                a[i][i] += -2 * k * aij + k * k * a[j][j];
                for (std::size_t l = 0; l < Dim; ++l) u[i][l] -= k * u[j][l];
                changed = true;
            }
        }
    }
    // Selection sort by diagonal entry.
    for (std::size_t i = 0; i < Dim; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < Dim; ++j) {
            if (a[j][j] < a[best][best]) best = j;
        }
        if (best == i) continue;
        std::swap(a[i], a[best]);
        for (auto& row : a) std::swap(row[i], row[best]);
        std::swap(u[i], u[best]);
    }
    return u;
}

namespace detail {

template <std::size_t Dim>
struct Cholesky {
    std::array<std::array<long double, Dim>, Dim> q{};

    explicit Cholesky(const Gram<Dim>& a) {
        for (std::size_t i = 0; i < Dim; ++i) {
            for (std::size_t j = 0; j < Dim; ++j) q[i][j] = static_cast<long double>(a[i][j]);
        }
        for (std::size_t i = 0; i < Dim; ++i) {
            if (!(q[i][i] > 0)) throw InvariantViolation("lattice: Gram matrix is not positive definite");
            for (std::size_t j = i + 1; j < Dim; ++j) {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for (std::size_t k = i + 1; k < Dim; ++k) {
                for (std::size_t l = k; l < Dim; ++l) q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
};

// Recursively fixes coordinates Dim-1 .. 1; at the leaf the range of v_0 with
// q(v) <= bound is solved exactly and `inner(v, s, r, lo, hi)` is called,
// where q(v) = a00 v0^2 + 2 s v0 + r.
template <std::size_t Dim, typename Inner>
void enumerate_level(const Gram<Dim>& a, const Cholesky<Dim>& ch, std::int64_t bound, std::size_t level,
                     long double remaining, std::array<std::int64_t, Dim>& v, Inner& inner,
                     unsigned stride, unsigned offset) {
    if (level == 0) {
        std::int64_t s = 0;
        for (std::size_t j = 1; j < Dim; ++j) s += a[0][j] * v[j];
        std::int64_t r = 0;
        for (std::size_t j = 1; j < Dim; ++j) {
            for (std::size_t k = 1; k < Dim; ++k) r += a[j][k] * v[j] * v[k];
        }
        const __int128 disc = static_cast<__int128>(s) * s - static_cast<__int128>(a[0][0]) * (r - bound);
        if (disc < 0) return;
        const auto root = static_cast<std::int64_t>(arith::isqrt128(static_cast<unsigned __int128>(disc)));
        const std::int64_t a00 = a[0][0];
        // a00 v0 in [-s - root, -s + root]
        auto floor_div = [](std::int64_t x, std::int64_t y) {
            std::int64_t q = x / y;
            return (x % y != 0 && ((x < 0) != (y < 0))) ? q - 1 : q;
        };
        const std::int64_t lo = -floor_div(s + root, a00);
        const std::int64_t hi = floor_div(-s + root, a00);
        if (lo <= hi) inner(v, s, r, lo, hi);
        return;
    }
    long double center = 0;
    for (std::size_t j = level + 1; j < Dim; ++j) center -= ch.q[level][j] * static_cast<long double>(v[j]);
    const long double qii = ch.q[level][level];
    const long double extent = std::sqrt(std::max<long double>(remaining, 0) / qii) * (1 + 1e-9L) + 1e-6L;
    const auto lo = static_cast<std::int64_t>(std::floor(center - extent));
    const auto hi = static_cast<std::int64_t>(std::ceil(center + extent));
    for (std::int64_t x = lo; x <= hi; ++x) {
        if (level == Dim - 1 && stride > 1 && static_cast<unsigned>(arith::mod(x, stride)) != offset) continue;
        const long double dev = static_cast<long double>(x) - center;
        const long double rem = remaining - qii * dev * dev;
        if (rem < -1e-6L * (1 + std::fabs(remaining))) continue;
        v[level] = x;
        enumerate_level(a, ch, bound, level - 1, rem + 1e-6L * (1 + std::fabs(remaining)), v, inner, stride,
                        offset);
    }
    v[level] = 0;
}

} // namespace detail

/// Calls f(v, value) for every v with v^T A v <= bound.
template <std::size_t Dim, typename F>
void for_each_vector(const Gram<Dim>& a, std::int64_t bound, F&& f) {
    if (bound < 0) return;
    detail::Cholesky<Dim> ch(a);
    std::array<std::int64_t, Dim> v{};
    auto inner = [&](std::array<std::int64_t, Dim>& w, std::int64_t s, std::int64_t r, std::int64_t lo,
                     std::int64_t hi) {
        for (std::int64_t x = lo; x <= hi; ++x) {
            w[0] = x;
            f(static_cast<const std::array<std::int64_t, Dim>&>(w), a[0][0] * x * x + 2 * s * x + r);
        }
        w[0] = 0;
    };
    if constexpr (Dim == 1) {
        inner(v, 0, 0, -static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(bound / a[0][0]))),
              static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(bound / a[0][0]))));
    } else {
        detail::enumerate_level(a, ch, bound, Dim - 1, static_cast<long double>(bound), v, inner, 1, 0);
    }
}

/// counts[t] = #{v : v^T A v = t} for 0 <= t <= bound, split over `jobs`
/// threads by the outermost coordinate (the merge is order independent).
template <std::size_t Dim>
std::vector<std::int64_t> count_by_value(const Gram<Dim>& a, std::int64_t bound, unsigned jobs = 1) {
    static_assert(Dim >= 2);
    const auto size = static_cast<std::size_t>(std::max<std::int64_t>(bound, 0)) + 1;
    if (bound < 0) return {};
    detail::Cholesky<Dim> ch(a);
    jobs = std::max(1U, jobs);
    std::vector<std::vector<std::int64_t>> partial(jobs, std::vector<std::int64_t>(size, 0));
    auto worker = [&](unsigned id) {
        std::int64_t* counts = partial[id].data();
        const std::int64_t a00 = a[0][0];
        auto inner = [&](std::array<std::int64_t, Dim>&, std::int64_t s, std::int64_t r, std::int64_t lo,
                         std::int64_t hi) {
            std::int64_t value = a00 * lo * lo + 2 * s * lo + r;
            std::int64_t delta = a00 * (2 * lo + 1) + 2 * s;
            const std::int64_t step = 2 * a00;
            for (std::int64_t x = lo; x <= hi; ++x) {
                ++counts[value];
                value += delta;
                delta += step;
            }
        };
        std::array<std::int64_t, Dim> v{};
        detail::enumerate_level(a, ch, bound, Dim - 1, static_cast<long double>(bound), v, inner, jobs, id);
    };
    if (jobs == 1) {
        worker(0);
        return std::move(partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
        for (auto& t : pool) t.join();
    }
    std::vector<std::int64_t> counts(size, 0);
    for (const auto& part : partial) {
        for (std::size_t n = 0; n < size; ++n) counts[n] += part[n];
    }
    return counts;
}

} // namespace cvl::lattice
