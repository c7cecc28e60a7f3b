#pragma once

// Integer primitives shared by every module: Kronecker symbols, modular
// square roots, Weierstrass curve invariants and the Fourier coefficients
// a_n of the weight-2 newform attached to a curve of prime conductor.

#include <cvl/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace arith {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

inline std::int64_t powmod(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (e) {
        if (e & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1U;
    }
    return result;
}

/// floor(sqrt(n)) computed exactly.
inline std::uint64_t isqrt(std::uint64_t n) {
    if (n < 2) return n;
    auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::uint64_t isqrt128(unsigned __int128 n) {
    if (n < 2) return static_cast<std::uint64_t>(n);
    auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(std::int64_t n) {
    if (n < 0) return false;
    auto r = isqrt(static_cast<std::uint64_t>(n));
    return static_cast<std::int64_t>(r * r) == n;
}

struct ExtendedGcd {
    std::int64_t g, x, y; // g = a*x + b*y, g >= 0
};

inline ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    std::int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = powmod(a, static_cast<std::uint64_t>(d), n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
    std::vector<std::int64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (std::int64_t q = p * p; q <= bound; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    return primes;
}

/// Smallest prime factor table for 0..bound (entries 0 and 1 are 0).
inline std::vector<std::int64_t> smallest_prime_factors(std::int64_t bound) {
    std::vector<std::int64_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(bound, 1)) + 1, 0);
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (spf[static_cast<std::size_t>(p)] != 0) continue;
        for (std::int64_t q = p; q <= bound; q += p) {
            if (spf[static_cast<std::size_t>(q)] == 0) spf[static_cast<std::size_t>(q)] = p;
        }
    }
    return spf;
}

inline bool is_squarefree(std::int64_t n) {
    n = std::llabs(n);
    if (n == 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

/// Discriminant of a quadratic field (D != 1).
inline bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    std::int64_t r = mod(d, 4);
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    std::int64_t m = d / 4;
    std::int64_t rm = mod(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

/// Table flag[n] = is_fundamental_discriminant(-n) for n = 0..bound, by sieving.
inline std::vector<std::uint8_t> negative_fundamental_table(std::int64_t bound) {
    auto size = static_cast<std::size_t>(std::max<std::int64_t>(bound, 0)) + 1;
    std::vector<std::uint8_t> squarefree(size, 1);
    squarefree[0] = 0;
    for (std::int64_t p = 2; p * p <= bound; ++p) {
        for (std::int64_t q = p * p; q <= bound; q += p * p) squarefree[static_cast<std::size_t>(q)] = 0;
    }
    std::vector<std::uint8_t> flag(size, 0);
    for (std::int64_t n = 3; n <= bound; ++n) {
        // D = -n: D = 1 mod 4 <=> n = 3 mod 4.
        if (n % 4 == 3) {
            flag[static_cast<std::size_t>(n)] = squarefree[static_cast<std::size_t>(n)];
        } else if (n % 4 == 0) {
            std::int64_t m = n / 4; // D/4 = -m must be 2,3 mod 4, i.e. m = 2,1 mod 4
            if ((m % 4 == 1 || m % 4 == 2) && squarefree[static_cast<std::size_t>(m)]) {
                flag[static_cast<std::size_t>(n)] = 1;
            }
        }
    }
    return flag;
}

/// Kronecker symbol (D/n), extended to all integers n (with (D/-1) = sign D).
inline int kronecker(std::int64_t d, std::int64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) result = -1;
    }
    // Factor out powers of two from n.
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((d & 1) == 0) return 0;
        if (twos & 1) {
            std::int64_t r8 = mod(d, 8);
            if (r8 == 3 || r8 == 5) result = -result;
        }
    }
    // Jacobi symbol (d/n) for odd n > 0.
    std::int64_t a = mod(d, n);
    std::int64_t m = n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t r8 = m % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

/// Largest modulus for which sqrt_mod uses exhaustive search.
inline constexpr std::int64_t kExhaustiveSqrtCutoff = 1'000'000;

/// The smaller square root of D modulo an odd prime N.
inline std::int64_t sqrt_mod(std::int64_t d, std::int64_t n) {
    if (n < 3 || n % 2 == 0) throw PreconditionError("sqrt_mod: modulus must be an odd prime");
    if (kronecker(d, n) != 1) throw PreconditionError("no square root");
    const std::int64_t target = mod(d, n);
    if (n <= kExhaustiveSqrtCutoff) {
        for (std::int64_t r = 1; r <= (n - 1) / 2; ++r) {
            if (r * r % n == target) return r;
        }
        throw InvariantViolation("sqrt_mod: residue without root");
    }
    // Tonelli-Shanks beyond the exhaustive range.
    std::int64_t q = n - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::int64_t z = 2;
    while (kronecker(z, n) != -1) ++z;
    std::int64_t c = powmod(z, static_cast<std::uint64_t>(q), n);
    std::int64_t r = powmod(target, static_cast<std::uint64_t>((q + 1) / 2), n);
    std::int64_t t = powmod(target, static_cast<std::uint64_t>(q), n);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::int64_t t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, n);
            ++i;
        }
        std::int64_t b = c;
        for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, n);
        r = mulmod(r, b, n);
        c = mulmod(b, b, n);
        t = mulmod(t, c, n);
        m = i;
    }
    return std::min(r, n - r);
}

// ---------------------------------------------------------------------------
// Elliptic curves

struct AffinePoint {
    Rational x, y;
};

struct CurveData {
    std::array<std::int64_t, 5> a{}; // a1, a2, a3, a4, a6
    std::int64_t conductor = 0;
    std::optional<int> root_number;  // filled in by lfun::root_number
    std::optional<AffinePoint> generator;

    std::int64_t a1() const { return a[0]; }
    std::int64_t a2() const { return a[1]; }
    std::int64_t a3() const { return a[2]; }
    std::int64_t a4() const { return a[3]; }
    std::int64_t a6() const { return a[4]; }

    BigInt b2() const { return BigInt(a1()) * a1() + 4 * BigInt(a2()); }
    BigInt b4() const { return 2 * BigInt(a4()) + BigInt(a1()) * a3(); }
    BigInt b6() const { return BigInt(a3()) * a3() + 4 * BigInt(a6()); }
    BigInt b8() const {
        BigInt A1 = a1(), A2 = a2(), A3 = a3(), A4 = a4(), A6 = a6();
        return A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    }
    BigInt c4() const { return b2() * b2() - 24 * b4(); }
    BigInt c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    BigInt discriminant() const {
        BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    bool contains(const AffinePoint& p) const {
        const Rational& x = p.x;
        const Rational& y = p.y;
        return y * y + a1() * x * y + a3() * y == x * x * x + a2() * x * x + a4() * x + a6();
    }
};

/// Builds a curve, deriving the prime conductor from the discriminant.
///
/// The discriminant must be +-N^k for a prime N with N not dividing c4
/// (multiplicative reduction, so the model is minimal and the conductor is N).
inline CurveData make_curve(std::array<std::int64_t, 5> coeffs,
                            std::optional<AffinePoint> generator = std::nullopt) {
    CurveData e;
    e.a = coeffs;
    BigInt disc = e.discriminant();
    if (disc == 0) throw PreconditionError("singular curve");
    BigInt m = abs(disc);
    BigInt p = 0;
    for (BigInt q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            p = q;
            break;
        }
    }
    if (p == 0) p = m;
    if (p < 2) throw PreconditionError("curve has everywhere good reduction");
    while (m % p == 0) m /= p;
    if (m != 1) throw PreconditionError("conductor is not prime");
    if (e.c4() % p == 0) throw PreconditionError("additive reduction: conductor is not prime");
    e.conductor = static_cast<std::int64_t>(p);
    if (generator) {
        if (!e.contains(*generator)) throw PreconditionError("generator is not on the curve");
        e.generator = generator;
    }
    return e;
}

/// The strong Weil curves of conductor 11, 19, 37 and 43 (with generators in rank 1).
inline CurveData standard_curve(std::int64_t conductor) {
    switch (conductor) {
    case 11: return make_curve({0, -1, 1, -10, -20});
    case 19: return make_curve({0, 1, 1, -9, -15});
    case 37: return make_curve({0, 0, 1, -1, 0}, AffinePoint{0, 0});
    case 43: return make_curve({0, 1, 1, 0, 0}, AffinePoint{0, 0});
    default: throw PreconditionError("no built-in curve of this conductor");
    }
}

/// p + 1 - #E(F_p), counting the singular point at bad primes.
inline std::int64_t trace_of_frobenius(const CurveData& e, std::int64_t p) {
    if (p == 2) {
        std::int64_t affine = 0;
        for (std::int64_t x = 0; x < 2; ++x) {
            for (std::int64_t y = 0; y < 2; ++y) {
                std::int64_t lhs = y * y + e.a1() * x * y + e.a3() * y;
                std::int64_t rhs = x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
                if (mod(lhs - rhs, 2) == 0) ++affine;
            }
        }
        return 2 - affine;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6; count via a table of squares.
    const std::int64_t b2 = mod(static_cast<std::int64_t>(e.b2() % p), p);
    const std::int64_t b4 = mod(static_cast<std::int64_t>(e.b4() % p), p);
    const std::int64_t b6 = mod(static_cast<std::int64_t>(e.b6() % p), p);
    std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t t = 1; t < p; ++t) chi[static_cast<std::size_t>(t * t % p)] = 1;
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t f = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
        sum += chi[static_cast<std::size_t>(f)];
    }
    return -sum;
}

/// Coefficients a_1..a_M of a normalized Hecke eigenform.
struct FourierCoeffs {
    std::vector<std::int64_t> a; // a[0] unused (0), a[n] for 1 <= n <= M

    std::int64_t size() const { return static_cast<std::int64_t>(a.size()) - 1; }
    std::int64_t operator[](std::int64_t n) const { return a[static_cast<std::size_t>(n)]; }
};

/// Extends prime-indexed values a_p to all n <= M by the Hecke recursion and
/// multiplicativity. `ap(p)` is queried once per prime p <= M.
template <typename PrimeTrace>
FourierCoeffs extend_multiplicatively(std::int64_t bound, std::int64_t level, PrimeTrace&& ap) {
    if (bound < 1) throw PreconditionError("fourier_coefficients: M must be >= 1");
    FourierCoeffs f;
    f.a.assign(static_cast<std::size_t>(bound) + 1, 0);
    f.a[1] = 1;
    auto spf = smallest_prime_factors(bound);
    for (std::int64_t n = 2; n <= bound; ++n) {
        std::int64_t p = spf[static_cast<std::size_t>(n)];
        std::int64_t m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) {
            f.a[static_cast<std::size_t>(n)] = f.a[static_cast<std::size_t>(m)] * f.a[static_cast<std::size_t>(pk)];
        } else if (pk == p) {
            f.a[static_cast<std::size_t>(n)] = ap(p);
        } else {
            std::int64_t a_p = f.a[static_cast<std::size_t>(p)];
            std::int64_t prev = f.a[static_cast<std::size_t>(pk / p)];
            if (level % p == 0) {
                f.a[static_cast<std::size_t>(n)] = a_p * prev;
            } else {
                f.a[static_cast<std::size_t>(n)] = a_p * prev - p * f.a[static_cast<std::size_t>(pk / p / p)];
            }
        }
    }
    return f;
}

/// a_n of the newform attached to E, by naive point counting (O(p) per prime).
inline FourierCoeffs fourier_coefficients(const CurveData& e, std::int64_t bound) {
    if (e.discriminant() == 0) throw PreconditionError("singular curve");
    return extend_multiplicatively(bound, e.conductor,
                                   [&](std::int64_t p) { return trace_of_frobenius(e, p); });
}

inline std::int64_t divisor_sum(std::int64_t n) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += d;
            if (d * d != n) s += n / d;
        }
    }
    return s;
}

} // namespace arith
} // namespace cvl
