#pragma once

// Central values of L(E, s) and its quadratic twists, the root number, and
// the two proportionality checks L(f,1) L(f x chi_D,1) ~ m_D^2 / sqrt|D|
// (theta side) and L(E,D,1) ~ m_D^2 / sqrt|D| (Heegner side).

#include <cvl/arith.hpp>
#include <cvl/heegner.hpp>
#include <cvl/quat.hpp>
#include <cvl/theta.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace cvl::lfun {

using Real = long double;
inline constexpr Real kPi = heegner::kPi;

/// Smallest relative tolerance a central value may be asked for.
inline constexpr double kMinTolerance = 1e-14;

namespace detail {

/// sum_{n > m} n r^n.
inline Real weighted_geometric_tail(Real r, std::int64_t m) {
    const auto m1 = static_cast<Real>(m + 1);
    return std::pow(r, m1) * (m1 - static_cast<Real>(m) * r) / ((1 - r) * (1 - r));
}

/// Least m with 2 sum_{n > m} n r^n < target.
inline std::int64_t terms_for(Real r, Real target) {
    std::int64_t hi = 1;
    while (2 * weighted_geometric_tail(r, hi) >= target) hi *= 2;
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = (lo + hi) / 2;
        (2 * weighted_geometric_tail(r, mid) < target ? hi : lo) = mid;
    }
    return hi;
}

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& f) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) {
        pool.emplace_back([&, id] {
            for (std::size_t i = id; i < count; i += jobs) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace detail

/// Coefficients chi_D(n) a_n of the twist (D = 1 gives a_n).
inline std::vector<Real> twisted(const arith::FourierCoeffs& a, std::int64_t d, std::int64_t terms) {
    if (a.size() < terms) throw PreconditionError("not enough Fourier coefficients");
    std::vector<Real> b(static_cast<std::size_t>(terms) + 1, 0);
    for (std::int64_t n = 1; n <= terms; ++n) {
        const int chi = d == 1 ? 1 : arith::kronecker(d, n);
        b[static_cast<std::size_t>(n)] = static_cast<Real>(chi * a[n]);
    }
    return b;
}

/// Conductor of the twist by chi_D of a newform of prime level N.
inline std::int64_t twisted_conductor(std::int64_t level, std::int64_t d) {
    if (d == 1) return level;
    const std::int64_t ad = d < 0 ? -d : d;
    return ad % level == 0 ? ad * ad : level * ad * ad;
}

// Split point of the smoothed functional-equation series.
inline constexpr Real kSplitPoint = 1.1L;
inline constexpr Real kTestPoint = 1.2L;

/// Tail of the smoothed series after m terms, for |b_n| <= n^2.
///
/// Once x_n >= 1, each incomplete-gamma term is at most 3 e^{-x_n / t0}, so the
/// tail is below 3 sum_{n > m} n^2 r^n with r = e^{-2 pi / (t0 sqrt Q)}.
inline Real smoothed_tail(std::int64_t conductor, std::int64_t m) {
    const Real sq = std::sqrt(static_cast<Real>(conductor));
    if (2 * kPi * static_cast<Real>(m + 1) / sq < 1) return INFINITY;
    const Real r = std::exp(-2 * kPi / (kSplitPoint * sq));
    const auto m1 = static_cast<Real>(m + 1);
    const Real ratio = r * (1 + 1 / m1) * (1 + 1 / m1);
    if (ratio >= 1) return INFINITY;
    return 3 * m1 * m1 * std::pow(r, m1) / (1 - ratio);
}

/// Terms so that the smoothed series has tail below `target`.
inline std::int64_t root_number_terms(std::int64_t conductor, Real target = 1e-15L) {
    std::int64_t hi = 1;
    while (!(smoothed_tail(conductor, hi) < target)) hi *= 2;
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = (lo + hi) / 2;
        (smoothed_tail(conductor, mid) < target ? hi : lo) = mid;
    }
    return hi;
}

struct RootNumber {
    int sign = 0;
    Real margin = 0;     // |Lambda(s) + Lambda(2 - s)| style mismatch of the losing sign
    Real mismatch = 0;   // mismatch of the winning sign
    Real tail_bound = 0;
    std::int64_t terms = 0;
};

/// Certifies eps with Lambda(s) = eps Lambda(2 - s) for coefficients b_n of conductor Q.
inline RootNumber certify_root_number(const std::vector<Real>& b, std::int64_t conductor) {
    const std::int64_t terms = root_number_terms(conductor);
    if (static_cast<std::int64_t>(b.size()) <= terms) throw PreconditionError("root_number: not enough coefficients");
    const Real sq = std::sqrt(static_cast<Real>(conductor));
    // Lambda(s) = sum b_n [x^-s G(s, x t0) + eps x^{s-2} G(2-s, x / t0)], x = 2 pi n / sqrt Q.
    auto lambda = [&](Real s, int eps) {
        Real total = 0;
        for (std::int64_t n = terms; n >= 1; --n) {
            const Real bn = b[static_cast<std::size_t>(n)];
            if (bn == 0) continue;
            const Real x = 2 * kPi * static_cast<Real>(n) / sq;
            const Real first = std::pow(x, -s) * boost::math::tgamma(s, x * kSplitPoint);
            const Real second = std::pow(x, s - 2) * boost::math::tgamma(2 - s, x / kSplitPoint);
            total += bn * (first + eps * second);
        }
        return total;
    };
    RootNumber out;
    out.terms = terms;
    out.tail_bound = smoothed_tail(conductor, terms);
    Real mismatch[2];
    for (int k = 0; k < 2; ++k) {
        const int eps = k == 0 ? 1 : -1;
        mismatch[k] = std::fabs(lambda(kTestPoint, eps) - eps * lambda(2 - kTestPoint, eps));
    }
    const int win = mismatch[0] < mismatch[1] ? 0 : 1;
    out.sign = win == 0 ? 1 : -1;
    out.mismatch = mismatch[win];
    out.margin = mismatch[1 - win];
    const Real scale = 1e-12L;
    if (out.mismatch > scale + 10 * out.tail_bound || out.margin < 1e3L * std::max(out.tail_bound, out.mismatch)) {
        throw PrecisionError("cannot certify sign");
    }
    return out;
}

inline RootNumber root_number_details(const arith::FourierCoeffs& a, std::int64_t level, std::int64_t d = 1) {
    const std::int64_t q = twisted_conductor(level, d);
    const std::int64_t terms = root_number_terms(q);
    return certify_root_number(twisted(a, d, terms + 1), q);
}

inline int root_number(const arith::CurveData& e) {
    const std::int64_t terms = root_number_terms(e.conductor) + 1;
    return root_number_details(arith::fourier_coefficients(e, terms), e.conductor).sign;
}

inline arith::CurveData with_root_number(arith::CurveData e) {
    if (!e.root_number) e.root_number = root_number(e);
    return e;
}

struct CentralValue {
    std::int64_t D = 1;
    Real value = 0;
    std::int64_t terms = 0;
    Real tail_bound = 0;
    int root_number = 0; // eps_D
};

/// Terms needed for central_value at (N, D, tol).
inline std::int64_t central_terms(std::int64_t level, std::int64_t d, double tol) {
    const Real r = std::exp(-2 * kPi / std::sqrt(static_cast<Real>(twisted_conductor(level, d))));
    return detail::terms_for(r, static_cast<Real>(tol) / 2);
}

/// Coefficient count that covers both central_value and the root number certificate.
inline std::int64_t coefficients_needed(std::int64_t level, std::int64_t d, double tol) {
    std::int64_t m = central_terms(level, d, tol);
    const std::int64_t ad = d < 0 ? -d : d;
    if (d != 1 && ad % level == 0) m = std::max(m, root_number_terms(twisted_conductor(level, d)) + 1);
    return m;
}

inline void check_twist(std::int64_t d) {
    if (d != 1 && !arith::is_fundamental_discriminant(d)) throw PreconditionError("central_value: D must be fundamental");
}

/// L(f x chi_D, 1) = (1 + eps_D) sum chi_D(n) (a_n / n) e^{-2 pi n / sqrt Q}.
///
/// For gcd(D, N) = 1, Q = N D^2 and eps_D = eps chi_D(-N); when N | D, Q = D^2
/// and eps_D is certified numerically.
inline CentralValue central_value(const arith::FourierCoeffs& a, std::int64_t level, int eps, std::int64_t d, double tol,
                                  bool allow_ramified = true) {
    check_twist(d);
    if (!(tol >= kMinTolerance)) throw PrecisionError("precision: tolerance below float resolution");
    const std::int64_t ad = d < 0 ? -d : d;
    const bool ramified = d != 1 && ad % level == 0;
    if (ramified && !allow_ramified) throw PreconditionError("central_value: D shares a factor with N");
    CentralValue out;
    out.D = d;
    if (d == 1) {
        out.root_number = eps;
    } else if (!ramified) {
        out.root_number = eps * arith::kronecker(d, -level);
    } else {
        out.root_number = root_number_details(a, level, d).sign;
    }
    const std::int64_t q = twisted_conductor(level, d);
    const Real r = std::exp(-2 * kPi / std::sqrt(static_cast<Real>(q)));
    out.terms = central_terms(level, d, tol);
    out.tail_bound = 2 * detail::weighted_geometric_tail(r, out.terms);
    if (out.root_number == -1) {
        out.value = 0;
        return out;
    }
    const auto b = twisted(a, d, out.terms);
    Real sum = 0;
    for (std::int64_t n = out.terms; n >= 1; --n) {
        const Real bn = b[static_cast<std::size_t>(n)];
        if (bn != 0) sum += bn / static_cast<Real>(n) * std::pow(r, static_cast<Real>(n));
    }
    out.value = 2 * sum;
    return out;
}

inline CentralValue central_value(const arith::CurveData& e, std::int64_t d, double tol) {
    check_twist(d);
    if (d != 1 && std::gcd(d, e.conductor) != 1) throw PreconditionError("central_value: D shares a factor with N");
    const auto curve = with_root_number(e);
    const std::int64_t m = coefficients_needed(e.conductor, d, tol);
    return central_value(arith::fourier_coefficients(curve, m), e.conductor, *curve.root_number, d, tol, false);
}

/// a_n of the eigenform e read off one row of the Brandt matrices:
/// a_n = sum_j B(n)_{kj} e(j) / e(k).
inline arith::FourierCoeffs brandt_fourier_coefficients(const quat::BrandtFamily& family, const quat::Eigenform& f,
                                                        std::int64_t bound, unsigned jobs = 1) {
    const auto& e = f.vector;
    std::size_t k = 0;
    while (e[k] == 0) ++k;
    const auto& classes = family.classes();
    std::vector<Rational> acc(static_cast<std::size_t>(bound) + 1, Rational(0));
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        const auto counts = family.pair_counts(k, j, bound, jobs);
        for (std::int64_t n = 1; n <= bound; ++n) acc[static_cast<std::size_t>(n)] += Rational(counts[static_cast<std::size_t>(n)]) * Rational(e[j]);
    }
    arith::FourierCoeffs out;
    out.a.assign(static_cast<std::size_t>(bound) + 1, 0);
    const Rational scale = Rational(e[k]) * classes.classes[k].units;
    for (std::int64_t n = 1; n <= bound; ++n) {
        const Rational v = acc[static_cast<std::size_t>(n)] / scale;
        if (denominator(v) != 1) throw InvariantViolation("Brandt eigenvalue is not integral");
        out.a[static_cast<std::size_t>(n)] = static_cast<std::int64_t>(numerator(v));
    }
    const std::int64_t level = classes.level();
    const auto check = arith::extend_multiplicatively(bound, level, [&](std::int64_t p) { return out[p]; });
    if (check.a != out.a) throw InvariantViolation("Brandt eigenvalues are not multiplicative");
    return out;
}

struct ReportEntry {
    std::int64_t D = 0;
    Rational m;
    Real L = 0;
    Real tail_bound = 0;
    int delta = 1;
    std::optional<Real> ratio;
};

struct VerificationReport {
    std::string kind;
    std::int64_t level = 0;
    double tol = 0;
    Real central = 0; // L(f, 1) for the theta route
    int root_number = 0;
    std::vector<ReportEntry> entries;
    Real kappa = 0;
    Real max_deviation = 0;
    std::size_t ratio_count = 0;
    std::vector<std::int64_t> inconsistent; // D with m_D = 0 xor L_D = 0
    std::string flag;
    bool passed = false;

    void summarize() {
        Real sum = 0;
        ratio_count = 0;
        for (const auto& e : entries) {
            if (e.ratio) {
                sum += *e.ratio;
                ++ratio_count;
            }
        }
        max_deviation = 0;
        kappa = ratio_count ? sum / static_cast<Real>(ratio_count) : 0;
        for (const auto& e : entries) {
            if (e.ratio) max_deviation = std::max(max_deviation, std::fabs(*e.ratio / kappa - 1));
        }
    }
};

/// Fundamental D < 0 with |D| <= bound and (D/N) != 1, sorted by |D|.
inline std::vector<std::int64_t> waldspurger_discriminants(std::int64_t level, std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 3; n <= bound; ++n) {
        const std::int64_t d = -n;
        if (arith::is_fundamental_discriminant(d) && arith::kronecker(d, level) != 1) out.push_back(d);
    }
    return out;
}

inline constexpr double kCentralTolerance = 1e-12;

/// L(f,1) L(f x chi_D,1) sqrt|D| / (delta_D m_D^2) over admissible D, with f the first
/// rational cusp eigenform at level N and m_D the coefficients of its weight 3/2 form.
inline VerificationReport waldspurger_verify(std::int64_t level, std::int64_t bound, double tol, unsigned jobs = 1) {
    const auto order = quat::maximal_order(level);
    const auto classes = quat::left_ideal_classes(order);
    const quat::BrandtFamily family(classes);
    const auto decomposition = quat::eigenforms(family, std::max<std::int64_t>(13, 2));
    const auto cusp = decomposition.cusp_forms();
    if (cusp.empty()) throw PreconditionError("waldspurger_verify: no rational cusp eigenform at this level");
    const quat::Eigenform& f = *cusp.front();
    const auto lattices = theta::ternary_lattices(classes);
    const auto g = theta::weight32_form(f, lattices, bound, level, jobs);

    VerificationReport report;
    report.kind = "waldspurger";
    report.level = level;
    report.tol = tol;
    const auto discs = waldspurger_discriminants(level, bound);
    std::int64_t need = root_number_terms(level) + 1;
    need = std::max(need, coefficients_needed(level, 1, kCentralTolerance));
    for (auto d : discs) need = std::max(need, coefficients_needed(level, d, kCentralTolerance));
    const auto a = brandt_fourier_coefficients(family, f, need, jobs);
    report.root_number = root_number_details(a, level).sign;
    if (report.root_number == -1) {
        report.flag = "g identically zero";
        for (auto d : discs) report.entries.push_back({d, g.m(d), 0, 0, (-d) % level == 0 ? 2 : 1, std::nullopt});
        report.passed = false;
        return report;
    }
    const auto base = central_value(a, level, report.root_number, 1, kCentralTolerance);
    report.central = base.value;
    report.entries.resize(discs.size());
    detail::parallel_for(discs.size(), jobs, [&](std::size_t i) {
        const std::int64_t d = discs[i];
        const auto cv = central_value(a, level, report.root_number, d, kCentralTolerance);
        ReportEntry e{d, g.m(d), cv.value, cv.tail_bound, (-d) % level == 0 ? 2 : 1, std::nullopt};
        if (e.m != 0) {
            const Real m = e.m.convert_to<Real>();
            e.ratio = base.value * cv.value * std::sqrt(static_cast<Real>(-d)) / (e.delta * m * m);
        }
        report.entries[i] = e;
    });
    for (const auto& e : report.entries) {
        const bool l_zero = e.L <= 1e3L * kCentralTolerance;
        if ((e.m == 0) != l_zero) report.inconsistent.push_back(e.D);
    }
    report.summarize();
    report.passed = report.ratio_count > 0 && report.max_deviation < tol && report.inconsistent.empty();
    return report;
}

/// L(E,D,1) sqrt|D| / m_D^2 over the given D, with m_D from Heegner points.
inline VerificationReport gross_zagier_verify(const arith::CurveData& e, const std::vector<std::int64_t>& discs,
                                              double tol, unsigned jobs = 1) {
    const auto curve = with_root_number(e);
    VerificationReport report;
    report.kind = "grosszagier";
    report.level = curve.conductor;
    report.tol = tol;
    report.root_number = *curve.root_number;
    std::vector<std::int64_t> sorted = discs;
    std::sort(sorted.begin(), sorted.end(), [](auto x, auto y) { return x > y; });
    std::int64_t need = 1;
    for (auto d : sorted) need = std::max(need, central_terms(curve.conductor, d, kCentralTolerance));
    const auto a = arith::fourier_coefficients(curve, need);
    report.entries.resize(sorted.size());
    detail::parallel_for(sorted.size(), jobs, [&](std::size_t i) {
        const std::int64_t d = sorted[i];
        const auto h = heegner::heegner_coefficient(curve, d);
        const auto cv = central_value(a, curve.conductor, *curve.root_number, d, kCentralTolerance, false);
        ReportEntry entry{d, Rational(h.m), cv.value, cv.tail_bound, 1, std::nullopt};
        if (h.m != 0) entry.ratio = cv.value * std::sqrt(static_cast<Real>(-d)) / static_cast<Real>(h.m * h.m);
        report.entries[i] = entry;
    });
    for (const auto& en : report.entries) {
        const bool l_zero = en.L <= 1e3L * kCentralTolerance;
        if ((en.m == 0) != l_zero) report.inconsistent.push_back(en.D);
    }
    report.summarize();
    if (report.ratio_count == 0) {
        report.flag = "degenerate";
        report.passed = false;
        return report;
    }
    report.passed = report.max_deviation < tol && report.inconsistent.empty();
    return report;
}

} // namespace cvl::lfun
