#pragma once

// Heegner points on X_0(N) and the integer m_D with P_D = m_D P_0.

#include <cvl/arith.hpp>
#include <cvl/bqf.hpp>

#include <boost/math/special_functions/ellint_rf.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace cvl::heegner {

using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

/// omega1 real, omega2 purely imaginary (Delta > 0).
struct PeriodLattice {
    Real omega1 = 0;
    Complex omega2;
    bool rectangular = true;
    std::array<Real, 3> roots{}; // e1 > e2 > e3 of 4X^3 - g2 X - g3
    Real g2 = 0, g3 = 0;

    Complex tau() const { return omega2 / omega1; }

    /// z reduced to {s omega1 + t omega2 : 0 <= s, t < 1}.
    Complex reduce(Complex z) const {
        Real s = z.real() / omega1, t = z.imag() / omega2.imag();
        s -= std::floor(s);
        t -= std::floor(t);
        return Complex(s * omega1, t * omega2.imag());
    }
};

namespace detail {

inline Real to_real(const BigInt& x) { return x.convert_to<Real>(); }

/// Eisenstein reconstruction of (g2, g3) from the lattice.
inline std::array<Real, 2> invariants_from_lattice(const PeriodLattice& l) {
    const Real q = std::exp(-2 * kPi * l.omega2.imag() / l.omega1);
    Real e4 = 1, e6 = 1, qn = 1;
    for (int n = 1; n <= 200; ++n) {
        qn *= q;
        if (qn < 1e-30L) break;
        Real s3 = 0, s5 = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d == 0) {
                s3 += std::pow(static_cast<Real>(d), 3);
                s5 += std::pow(static_cast<Real>(d), 5);
            }
        }
        e4 += 240 * s3 * qn;
        e6 -= 504 * s5 * qn;
    }
    const Real w = 2 * kPi / l.omega1;
    return {std::pow(w, 4) * e4 / 12, std::pow(w, 6) * e6 / 216};
}

} // namespace detail

inline Real agm(Real a, Real b) {
    for (int it = 0; it < 100 && std::fabs(a - b) > 1e-19L * std::fabs(a); ++it) {
        const Real m = (a + b) / 2;
        b = std::sqrt(a * b);
        a = m;
    }
    return (a + b) / 2;
}

inline PeriodLattice period_lattice(const arith::CurveData& e) {
    if (e.discriminant() <= 0) throw PreconditionError("non-rectangular lattice unsupported");
    PeriodLattice l;
    l.g2 = detail::to_real(e.c4()) / 12;
    l.g3 = detail::to_real(e.c6()) / 216;
    // 4X^3 - g2 X - g3 = 4 (X^3 + p X + q)
    const Real p = -l.g2 / 4, q = -l.g3 / 4;
    const Real r = 2 * std::sqrt(-p / 3);
    const Real theta = std::acos(std::clamp<Real>(3 * q / (2 * p) * std::sqrt(-3 / p), -1, 1));
    for (int k = 0; k < 3; ++k) {
        Real x = r * std::cos(theta / 3 - 2 * kPi * k / 3);
        for (int it = 0; it < 4; ++it) {
            const Real f = 4 * x * x * x - l.g2 * x - l.g3, df = 12 * x * x - l.g2;
            if (df != 0) x -= f / df;
        }
        l.roots[static_cast<std::size_t>(k)] = x;
    }
    std::sort(l.roots.begin(), l.roots.end(), std::greater<>());
    const auto [e1, e2, e3] = l.roots;
    l.omega1 = kPi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
    l.omega2 = Complex(0, kPi / agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3)));
    const auto rec = detail::invariants_from_lattice(l);
    const Real scale = std::max<Real>(1, std::max(std::fabs(l.g2), std::fabs(l.g3)));
    if (std::fabs(rec[0] - l.g2) > 1e-8L * scale || std::fabs(rec[1] - l.g3) > 1e-8L * scale) {
        throw InvariantViolation("period lattice does not reproduce the curve invariants");
    }
    return l;
}

/// Relative mismatch between the curve invariants and those of the lattice.
inline Real reconstruction_residual(const PeriodLattice& l) {
    const auto rec = detail::invariants_from_lattice(l);
    return std::max(std::fabs(rec[0] - l.g2) / std::max<Real>(1, std::fabs(l.g2)),
                    std::fabs(rec[1] - l.g3) / std::max<Real>(1, std::fabs(l.g3)));
}

/// (wp(z), wp'(z)) by the q-expansion in u = e^{2 pi i z / omega1}.
inline std::array<Complex, 2> weierstrass_p(Complex z, const PeriodLattice& l) {
    // Center z so that |q|^{1/2} <= |u| <= |q|^{-1/2}.
    const Real h = l.omega2.imag();
    z -= Complex(0, h * std::floor(z.imag() / h + 0.5L));
    const Complex i(0, 1);
    const Real q = std::exp(-2 * kPi * h / l.omega1);
    const Complex u = std::exp(2 * kPi * i * z / l.omega1);
    const Complex one(1);
    auto f = [&](Complex x) { return x / ((one - x) * (one - x)); };
    auto g = [&](Complex x) { return x * (one + x) / ((one - x) * (one - x) * (one - x)); };
    Complex sp = 1.0L / 12 + f(u), sd = g(u);
    Real qn = 1;
    for (int n = 1; n <= 400; ++n) {
        qn *= q;
        const Complex a = qn * u, b = qn / u;
        const Complex tp = f(a) + f(b) - 2 * qn / ((1 - qn) * (1 - qn));
        const Complex td = g(a) - g(b);
        sp += tp;
        sd += td;
        if (std::abs(tp) + std::abs(td) < 1e-24L) break;
    }
    const Complex w = 2 * kPi * i / l.omega1;
    return {w * w * sp, w * w * w * sd};
}

/// Point (x, y) on the given model from z.
inline std::array<Complex, 2> point_from_z(const arith::CurveData& e, Complex z, const PeriodLattice& l) {
    const auto [p, dp] = weierstrass_p(z, l);
    const Complex x = p - detail::to_real(e.b2()) / 12;
    const Complex y = (dp - static_cast<Real>(e.a1()) * x - static_cast<Real>(e.a3())) / 2.0L;
    return {x, y};
}

/// z with Phi(z) = P, reduced to the fundamental cell; the point at infinity maps to 0.
inline Complex elliptic_log(const arith::CurveData& e, const std::optional<arith::AffinePoint>& pt,
                            const PeriodLattice& l) {
    if (!pt) return 0;
    if (!e.contains(*pt)) throw PreconditionError("elliptic_log: point is not on the curve");
    const Real x = pt->x.convert_to<Real>(), y = pt->y.convert_to<Real>();
    const Real X = x + detail::to_real(e.b2()) / 12;
    const Real Y = 2 * y + static_cast<Real>(e.a1()) * x + static_cast<Real>(e.a3());
    const auto [e1, e2, e3] = l.roots;
    std::vector<Complex> candidates;
    auto rf = [&](Real t) { return boost::math::ellint_rf(std::max<Real>(t - e1, 0), t - e2, t - e3); };
    if (X >= e1 - 1e-12L * std::max<Real>(1, std::fabs(e1))) {
        const Real t = rf(X);
        candidates = {t, -t};
    } else {
        // Egg: shift by the 2-torsion point (e3, 0) onto the identity component.
        const Real lambda = Y / (X - e3);
        const Real x3 = lambda * lambda / 4 - X - e3;
        const Real t = rf(x3);
        candidates = {Complex(t, l.omega2.imag() / 2), Complex(-t, l.omega2.imag() / 2)};
    }
    Complex best = 0;
    Real best_err = -1;
    for (const auto& c : candidates) {
        const auto [p, dp] = weierstrass_p(c, l);
        const Real err = std::abs(p - X) / std::max<Real>(1, std::fabs(X)) + std::abs(dp - Y) / std::max<Real>(1, std::fabs(Y));
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = c;
        }
    }
    if (best_err > 1e-8L) throw InvariantViolation("elliptic logarithm failed the round trip");
    return l.reduce(best);
}

struct HeegnerSystem {
    arith::CurveData curve;
    std::int64_t D = 0;
    std::int64_t b_star = 0;
    std::vector<bqf::BinaryQuadraticForm> forms;
    std::vector<Complex> points; // z_Q = (-b + sqrt D) / 2a
};

inline HeegnerSystem heegner_system(const arith::CurveData& e, std::int64_t d,
                                    std::optional<std::int64_t> b_star = std::nullopt) {
    bqf::require_negative_fundamental(d, "heegner");
    if (d >= -4) throw PreconditionError("heegner: D must be < -4");
    const std::int64_t n = e.conductor;
    if (arith::kronecker(d, n) != 1) throw PreconditionError("heegner: N must split in Q(sqrt D)");
    HeegnerSystem s;
    s.curve = e;
    s.D = d;
    s.b_star = b_star ? *b_star : arith::sqrt_mod(arith::mod(d, n), n);
    s.forms = bqf::heegner_forms(d, n, s.b_star);
    const Real root = std::sqrt(static_cast<Real>(-d));
    for (const auto& q : s.forms) {
        s.points.emplace_back(static_cast<Real>(-q.b) / (2 * static_cast<Real>(q.a)), root / (2 * static_cast<Real>(q.a)));
    }
    return s;
}

/// z_D = sum_Q sum_{n <= M} (a_n / n) e^{2 pi i n z_Q}, angles reduced exactly.
inline Complex heegner_sum(const HeegnerSystem& s, const arith::FourierCoeffs& a, std::int64_t terms) {
    Complex total = 0;
    const Real root = std::sqrt(static_cast<Real>(-s.D));
    for (const auto& q : s.forms) {
        const std::int64_t den = 2 * q.a;
        const Real decay = 2 * kPi * root / static_cast<Real>(den);
        Real re = 0, im = 0;
        for (std::int64_t n = terms; n >= 1; --n) {
            if (a[n] == 0) continue;
            const Real mag = std::exp(-decay * static_cast<Real>(n)) * static_cast<Real>(a[n]) / static_cast<Real>(n);
            const std::int64_t num = arith::mod(arith::mulmod(-q.b, n, den), den);
            const Real angle = 2 * kPi * static_cast<Real>(num) / static_cast<Real>(den);
            re += mag * std::cos(angle);
            im += mag * std::sin(angle);
        }
        total += Complex(re, im);
    }
    return total;
}

/// Terms needed for the tail of heegner_sum to drop below `tail`, with envelope |a_n / n| <= n.
inline std::int64_t heegner_terms(const HeegnerSystem& s, Real tail = 1e-10L) {
    std::int64_t amax = 1;
    for (const auto& q : s.forms) amax = std::max(amax, q.a);
    const Real y = std::sqrt(static_cast<Real>(-s.D)) / (2 * static_cast<Real>(amax));
    const Real r = std::exp(-2 * kPi * y);
    const auto h = static_cast<Real>(s.forms.size());
    std::int64_t m = 1;
    auto bound = [&](std::int64_t mm) {
        const auto m1 = static_cast<Real>(mm + 1);
        return h * std::pow(r, m1) * (m1 - static_cast<Real>(mm) * r) / ((1 - r) * (1 - r));
    };
    while (bound(m) >= tail) m *= 2;
    std::int64_t lo = m / 2, hi = m;
    while (hi - lo > 1) {
        const std::int64_t mid = (lo + hi) / 2;
        (bound(mid) < tail ? hi : lo) = mid;
    }
    return hi;
}

struct HeegnerResult {
    std::int64_t D = 0;
    std::int64_t m = 0;
    Real residual = 0;
    std::int64_t terms = 0;
    Complex z_D;
};

inline constexpr Real kResidualThreshold = 1e-4L;

/// m_D with z_D = m_D z_0 + n_1 omega1 + n_2 omega2.
inline HeegnerResult heegner_coefficient(const arith::CurveData& e, std::int64_t d, std::int64_t terms = 0,
                                         std::optional<std::int64_t> b_star = std::nullopt,
                                         std::int64_t search_bound = 1000) {
    if (!e.generator) throw PreconditionError("heegner: curve needs a generator P0");
    if (e.root_number && *e.root_number != -1) throw PreconditionError("heegner: root number must be -1");
    const auto system = heegner_system(e, d, b_star);
    const auto lat = period_lattice(e);
    const Complex z0 = elliptic_log(e, e.generator, lat);
    std::int64_t m_terms = terms > 0 ? terms : heegner_terms(system);
    const Real h = lat.omega2.imag();
    for (int attempt = 0; attempt < 4; ++attempt, m_terms *= 2) {
        const auto a = arith::fourier_coefficients(e, m_terms);
        const Complex zd = heegner_sum(system, a, m_terms);
        HeegnerResult best{d, 0, -1, m_terms, zd};
        for (std::int64_t m = -search_bound; m <= search_bound; ++m) {
            const Real re = zd.real() - static_cast<Real>(m) * z0.real();
            const Real im = zd.imag() - static_cast<Real>(m) * z0.imag();
            const Real rr = std::fabs(re / lat.omega1 - std::round(re / lat.omega1));
            const Real ri = std::fabs(im / h - std::round(im / h));
            const Real res = std::max(rr, ri);
            if (best.residual < 0 || res < best.residual) {
                best.residual = res;
                best.m = m;
            }
        }
        if (best.residual < kResidualThreshold) return best;
    }
    throw PrecisionError("precision exhausted");
}

} // namespace cvl::heegner
