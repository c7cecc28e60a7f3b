#pragma once

// Positive definite binary quadratic forms and the Eisenstein warm-up:
// reduction, class groups, Gauss composition, Heegner forms of level N,
// the analytic class-number formulas and the three-squares theta series.

#include <cvl/arith.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <thread>
#include <tuple>
#include <vector>

namespace cvl::bqf {

struct BinaryQuadraticForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    std::int64_t operator()(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
    bool is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
    bool is_reduced() const {
        if (!(std::llabs(b) <= a && a <= c)) return false;
        if ((std::llabs(b) == a || a == c) && b < 0) return false;
        return true;
    }
    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
    friend auto operator<=>(const BinaryQuadraticForm& l, const BinaryQuadraticForm& r) {
        return std::tie(l.a, l.b, l.c) <=> std::tie(r.a, r.b, r.c);
    }
    friend std::ostream& operator<<(std::ostream& os, const BinaryQuadraticForm& q) {
        return os << '(' << q.a << ',' << q.b << ',' << q.c << ')';
    }
};

/// Number of units of the imaginary quadratic order of discriminant D.
inline int unit_count(std::int64_t d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

inline void require_negative_fundamental(std::int64_t d, const char* who) {
    if (d >= 0 || !arith::is_fundamental_discriminant(d)) {
        throw PreconditionError(std::string(who) + ": D must be a negative fundamental discriminant");
    }
}

/// The unique reduced form SL2(Z)-equivalent to q.
inline BinaryQuadraticForm reduce_form(BinaryQuadraticForm q) {
    const std::int64_t d = q.discriminant();
    if (d >= 0 || q.a <= 0) throw PreconditionError("reduce_form: form must be positive definite");
    for (;;) {
        // Translate b into (-a, a].
        if (q.b <= -q.a || q.b > q.a) {
            q.b = q.a - arith::mod(q.a - q.b, 2 * q.a);
            q.c = static_cast<std::int64_t>((static_cast<__int128>(q.b) * q.b - d) / (4 * static_cast<__int128>(q.a)));
        }
        if (q.a > q.c) {
            q = {q.c, -q.b, q.a};
            continue;
        }
        if (q.a == q.c && q.b < 0) q.b = -q.b;
        return q;
    }
}

inline BinaryQuadraticForm principal_form(std::int64_t d) {
    std::int64_t b = arith::mod(d, 2);
    return {1, b, (b * b - d) / 4};
}

struct ClassData {
    std::int64_t D = 0;
    std::int64_t h = 0;
    int w = 2;
    std::vector<BinaryQuadraticForm> representatives;
};

/// Reduced primitive forms of discriminant D, by the sweep over b.
inline ClassData class_group_representatives(std::int64_t d) {
    require_negative_fundamental(d, "class_group_representatives");
    ClassData out;
    out.D = d;
    out.w = unit_count(d);
    const std::int64_t absd = -d;
    for (std::int64_t b = arith::mod(d, 2); 3 * b * b <= absd; b += 2) {
        const std::int64_t t = (b * b - d) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= t; ++a) {
            if (t % a != 0) continue;
            const std::int64_t c = t / a;
            BinaryQuadraticForm q{a, b, c};
            if (!q.is_primitive()) continue;
            out.representatives.push_back(q);
            if (b != 0 && b != a && a != c) out.representatives.push_back({a, -b, c});
        }
    }
    std::sort(out.representatives.begin(), out.representatives.end(),
              [](const BinaryQuadraticForm& l, const BinaryQuadraticForm& r) {
                  return std::make_tuple(l.a, std::llabs(l.b), -l.b, l.c) <
                         std::make_tuple(r.a, std::llabs(r.b), -r.b, r.c);
              });
    out.h = static_cast<std::int64_t>(out.representatives.size());
    return out;
}

/// h(D) for every fundamental discriminant -X <= D < 0.
class ClassNumberTable {
public:
    ClassNumberTable(std::int64_t bound, std::vector<std::uint8_t> fundamental, std::vector<std::int64_t> counts)
        : bound_(bound), fundamental_(std::move(fundamental)), counts_(std::move(counts)) {}

    std::int64_t bound() const { return bound_; }
    bool contains(std::int64_t d) const {
        return d < 0 && -d <= bound_ && fundamental_[static_cast<std::size_t>(-d)] != 0;
    }
    std::int64_t at(std::int64_t d) const {
        if (!contains(d)) throw std::out_of_range("ClassNumberTable: no entry for D");
        return counts_[static_cast<std::size_t>(-d)];
    }
    /// (D, h) pairs sorted by |D|.
    std::vector<std::pair<std::int64_t, std::int64_t>> entries() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (std::int64_t n = 1; n <= bound_; ++n) {
            if (fundamental_[static_cast<std::size_t>(n)]) out.emplace_back(-n, counts_[static_cast<std::size_t>(n)]);
        }
        return out;
    }

private:
    std::int64_t bound_;
    std::vector<std::uint8_t> fundamental_;
    std::vector<std::int64_t> counts_;
};

/// One sweep over reduced triples (a, b, c) with 4ac - b^2 <= X.
///
/// Forms of fundamental discriminant are automatically primitive, so no gcd
/// test is needed. Work is split over `jobs` threads by leading coefficient.
inline ClassNumberTable class_number_batch(std::int64_t bound, unsigned jobs = 1) {
    if (bound < 3) throw PreconditionError("class_number_batch: X must be >= 3");
    auto fundamental = arith::negative_fundamental_table(bound);
    jobs = std::max(1U, jobs);
    const auto size = static_cast<std::size_t>(bound) + 1;
    std::vector<std::vector<std::uint32_t>> partial(jobs, std::vector<std::uint32_t>(size, 0));

    auto worker = [&](unsigned id) {
        auto& counts = partial[id];
        const std::uint8_t* fund = fundamental.data();
        std::uint32_t* h = counts.data();
        for (std::int64_t a = 1 + id; 3 * a * a <= bound; a += jobs) {
            for (std::int64_t b = -a + 1; b <= a; ++b) {
                // c = a needs b >= 0.
                std::int64_t c = (b < 0) ? a + 1 : a;
                std::int64_t absd = 4 * a * c - b * b;
                const std::int64_t step = 4 * a;
                for (; absd <= bound; absd += step) {
                    if (fund[absd]) ++h[absd];
                }
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
        for (auto& t : pool) t.join();
    }
    std::vector<std::int64_t> counts(size, 0);
    for (const auto& part : partial) {
        for (std::size_t n = 0; n < size; ++n) counts[n] += static_cast<std::int64_t>(part[n]);
    }
    return ClassNumberTable(bound, std::move(fundamental), std::move(counts));
}

/// Gauss composition of primitive forms of equal discriminant, then reduction.
inline BinaryQuadraticForm compose(BinaryQuadraticForm f1, BinaryQuadraticForm f2) {
    const std::int64_t d = f1.discriminant();
    if (d != f2.discriminant()) throw PreconditionError("compose: discriminant mismatch");
    if (d >= 0 || f1.a <= 0 || f2.a <= 0) throw PreconditionError("compose: forms must be positive definite");
    if (!f1.is_primitive() || !f2.is_primitive()) throw PreconditionError("compose: forms must be primitive");
    if (f1.a > f2.a) std::swap(f1, f2);
    const std::int64_t s = (f1.b + f2.b) / 2;
    const std::int64_t n = f2.b - s;
    std::int64_t y1 = 0, d0 = 0;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d0 = f1.a;
    } else {
        auto eg = arith::extended_gcd(f2.a, f1.a);
        y1 = eg.x;
        d0 = eg.g;
    }
    std::int64_t x2 = 0, y2 = 0, d1 = 0;
    if (s % d0 == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d0;
    } else {
        auto eg = arith::extended_gcd(s, d0);
        x2 = eg.x;
        y2 = -eg.y;
        d1 = eg.g;
    }
    const std::int64_t v1 = f1.a / d1;
    const std::int64_t v2 = f2.a / d1;
    const auto r = static_cast<std::int64_t>(arith::mod(
        static_cast<std::int64_t>((static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * f2.c) % v1), v1));
    const std::int64_t b3 = f2.b + 2 * v2 * r;
    const std::int64_t a3 = v1 * v2;
    const auto c3 = static_cast<std::int64_t>((static_cast<__int128>(b3) * b3 - d) / (4 * static_cast<__int128>(a3)));
    return reduce_form({a3, b3, c3});
}

/// An SL2(Z)-equivalent form whose leading coefficient is coprime to n,
/// taking the smallest such value of q at a small primitive vector.
inline BinaryQuadraticForm equivalent_with_coprime_leading(const BinaryQuadraticForm& q, std::int64_t n) {
    if (std::gcd(q.a, n) == 1) return q;
    std::int64_t best_value = 0, bx = 0, by = 0;
    for (std::int64_t r = 1; r <= 64 && best_value == 0; ++r) {
        for (std::int64_t x = -r; x <= r; ++x) {
            for (std::int64_t y : {-r, r}) {
                for (int swap = 0; swap < 2; ++swap) {
                    std::int64_t u = swap ? y : x, v = swap ? x : y;
                    if (std::gcd(u, v) != 1) continue;
                    std::int64_t value = q(u, v);
                    if (std::gcd(value, n) != 1) continue;
                    if (best_value == 0 || value < best_value) {
                        best_value = value;
                        bx = u;
                        by = v;
                    }
                }
            }
        }
    }
    if (best_value == 0) throw InvariantViolation("no primitive value coprime to the level");
    // Complete (bx, by) to [[bx, r], [by, s]] in SL2(Z).
    auto eg = arith::extended_gcd(bx, by); // bx*ex + by*ey = 1
    const std::int64_t r = -eg.y, s = eg.x;
    return {q(bx, by), 2 * q.a * bx * r + q.b * (bx * s + r * by) + 2 * q.c * by * s, q(r, s)};
}

/// Dirichlet composition of forms with coprime leading coefficients, without
/// reduction; the middle coefficient is taken in [0, 2 a1 a2).
inline BinaryQuadraticForm united_compose(const BinaryQuadraticForm& f1, const BinaryQuadraticForm& f2) {
    const std::int64_t d = f1.discriminant();
    if (std::gcd(f1.a, f2.a) != 1) throw PreconditionError("united_compose: leading coefficients not coprime");
    // B = b1 mod 2a1, B = b2 mod 2a2; b1 = b2 mod 2 so solve B = b1 + 2a1 t.
    const std::int64_t m = 2 * f1.a * f2.a;
    auto eg = arith::extended_gcd(f1.a, f2.a); // a1 x + a2 y = 1, so a1^-1 = x mod a2
    const std::int64_t t = arith::mulmod((f2.b - f1.b) / 2, eg.x, f2.a);
    const std::int64_t big_b = arith::mod(f1.b + 2 * f1.a * t, m);
    const std::int64_t a3 = f1.a * f2.a;
    const auto c3 = static_cast<std::int64_t>((static_cast<__int128>(big_b) * big_b - d) / (4 * static_cast<__int128>(a3)));
    return {a3, big_b, c3};
}

/// Representatives (a, b, c) of the h(D) classes with N | a and b = b* mod N.
inline std::vector<BinaryQuadraticForm> heegner_forms(std::int64_t d, std::int64_t level, std::int64_t b_star) {
    require_negative_fundamental(d, "heegner_forms");
    if (d >= -4) throw PreconditionError("heegner_forms: D must be < -4");
    if (level < 3 || !arith::is_prime(level)) throw PreconditionError("heegner_forms: level must be an odd prime");
    if (arith::kronecker(d, level) != 1) throw PreconditionError("heegner_forms: level must split in Q(sqrt D)");
    if (arith::mulmod(b_star, b_star, level) != arith::mod(d, level)) {
        throw PreconditionError("heegner_forms: b* is not a square root of D mod N");
    }
    // Lift b* to the residue mod 2N with matching parity, so that 4N | b^2 - D.
    std::int64_t b0 = arith::mod(b_star, level);
    if (arith::mod(b0 - d, 2) != 0) b0 += level;
    const BinaryQuadraticForm fixed{level, b0,
                                    static_cast<std::int64_t>((static_cast<__int128>(b0) * b0 - d) / (4 * level))};
    std::vector<BinaryQuadraticForm> out;
    for (const auto& q : class_group_representatives(d).representatives) {
        out.push_back(united_compose(equivalent_with_coprime_leading(q, level), fixed));
    }
    return out;
}

/// Dirichlet's finite formula h = -(w / 2|D|) sum_{n < |D|} n (D/n).
inline std::int64_t class_number_dirichlet(std::int64_t d) {
    require_negative_fundamental(d, "class_number_dirichlet");
    const std::int64_t absd = -d;
    std::int64_t sum = 0;
    for (std::int64_t n = 1; n < absd; ++n) sum += n * arith::kronecker(d, n);
    const std::int64_t num = -unit_count(d) * sum;
    if (num % (2 * absd) != 0) throw InvariantViolation("class_number_dirichlet: non-integral result");
    return num / (2 * absd);
}

/// A truncated series together with its term count and a rigorous tail bound.
struct SeriesValue {
    double value = 0;
    std::int64_t terms = 0;
    double tail_bound = 0;
};

inline constexpr double kMinSeriesTolerance = 1e-12;

/// h(D)^2 from Lerch's series, truncated once the tail bound is below tol/2.
///
/// Tail control uses sigma(n)/n <= 1 + ln n and ln n <= ln M + (n - M)/M.
inline SeriesValue class_number_lerch(std::int64_t d, double tol) {
    require_negative_fundamental(d, "class_number_lerch");
    if (!(tol > 0)) throw PreconditionError("class_number_lerch: tol must be positive");
    if (tol < kMinSeriesTolerance) throw PrecisionError("precision");
    const double absd = static_cast<double>(-d);
    const double w = unit_count(d);
    const double prefactor = w * w * std::sqrt(absd) / (2 * std::numbers::pi);
    const double r = std::exp(-2 * std::numbers::pi / absd);
    auto tail = [&](std::int64_t m) {
        const double mm = static_cast<double>(m);
        const double lead = 1 + std::log(mm) + 1 / mm;
        return prefactor * std::pow(r, mm + 1) * (lead / (1 - r) + r / (mm * (1 - r) * (1 - r)));
    };
    std::int64_t m = 1;
    while (tail(m) >= tol / 2) m = m + m / 8 + 1;
    // sigma(n) by a divisor sieve.
    std::vector<std::int64_t> sigma(static_cast<std::size_t>(m) + 1, 0);
    for (std::int64_t k = 1; k <= m; ++k) {
        for (std::int64_t n = k; n <= m; n += k) sigma[static_cast<std::size_t>(n)] += k;
    }
    long double sum = 0;
    for (std::int64_t n = 1; n <= m; ++n) {
        int chi = arith::kronecker(d, n);
        if (chi == 0) continue;
        sum += static_cast<long double>(chi) * sigma[static_cast<std::size_t>(n)] / n *
               std::exp(-2 * std::numbers::pi_v<long double> * n / absd);
    }
    return {static_cast<double>(prefactor * sum), m, tail(m)};
}

/// h(D) from the rapidly convergent series valid for D = 5 mod 8.
inline SeriesValue class_number_exp(std::int64_t d, double tol) {
    require_negative_fundamental(d, "class_number_exp");
    if (arith::mod(d, 8) != 5) throw PreconditionError("class_number_exp: requires D = 5 mod 8");
    if (!(tol > 0)) throw PreconditionError("class_number_exp: tol must be positive");
    if (tol < kMinSeriesTolerance) throw PrecisionError("precision");
    const double w = unit_count(d);
    const double beta = std::numbers::pi / std::sqrt(static_cast<double>(-d));
    // |term_n| <= 1/(e^{beta n} - 1) <= e^{-beta n} / (1 - e^{-beta (M+1)}) for n > M.
    auto tail = [&](std::int64_t m) {
        const double x = beta * static_cast<double>(m + 1);
        return w * std::exp(-x) / ((1 - std::exp(-beta)) * (1 - std::exp(-x)));
    };
    std::int64_t m = 1;
    while (tail(m) >= tol / 2) ++m;
    long double sum = 0;
    for (std::int64_t n = 1; n <= m; ++n) {
        int chi = arith::kronecker(d, n);
        if (chi == 0) continue;
        const long double x = static_cast<long double>(beta) * n;
        // 1 - (-1)^n e^x
        const long double denom = (n % 2 == 0) ? -std::expm1(x) : 1 + std::exp(x);
        sum += chi / denom;
    }
    return {static_cast<double>(w * sum), m, tail(m)};
}

/// Coefficients of (1/2) sum_{x = y = z mod 2} q^{x^2 + y^2 + z^2}.
struct ThetaCoefficients {
    std::int64_t X = 0;
    std::vector<std::int64_t> counts; // representation counts; coeff = counts / 2

    Rational coeff(std::int64_t n) const { return Rational(counts.at(static_cast<std::size_t>(n)), 2); }
    /// H_2(D) = coeff[|D|] / 12.
    Rational h2(std::int64_t d) const { return coeff(-d) / 12; }
};

inline ThetaCoefficients three_squares_theta(std::int64_t bound, unsigned jobs = 1) {
    if (bound < 0) throw PreconditionError("three_squares_theta: X must be >= 0");
    jobs = std::max(1U, jobs);
    const auto size = static_cast<std::size_t>(bound) + 1;
    const auto radius = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(bound)));
    std::vector<std::vector<std::int64_t>> partial(jobs, std::vector<std::int64_t>(size, 0));
    auto worker = [&](unsigned id) {
        std::int64_t* counts = partial[id].data();
        std::int64_t index = 0;
        for (std::int64_t x = -radius; x <= radius; ++x) {
            for (std::int64_t y = -radius; y <= radius; ++y) {
                if (((x - y) & 1) != 0) continue;
                const std::int64_t rest = bound - x * x - y * y;
                if (rest < 0) continue;
                if (index++ % jobs != id) continue;
                const auto zmax = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(rest)));
                std::int64_t z = -zmax;
                if (((z - x) & 1) != 0) ++z;
                const std::int64_t base = x * x + y * y;
                for (; z <= zmax; z += 2) ++counts[base + z * z];
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
        for (auto& t : pool) t.join();
    }
    ThetaCoefficients out;
    out.X = bound;
    out.counts.assign(size, 0);
    for (const auto& part : partial) {
        for (std::size_t n = 0; n < size; ++n) out.counts[n] += part[n];
    }
    return out;
}

} // namespace cvl::bqf
