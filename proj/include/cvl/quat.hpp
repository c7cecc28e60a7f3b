#pragma once

// The definite quaternion algebra ramified at {infinity, N}, its maximal
// orders, left ideal classes (via binary Hermitian forms over Z[i]), Brandt
// matrices and the rational eigenvectors of the Brandt algebra.

#include <cvl/arith.hpp>
#include <cvl/lattice.hpp>
#include <cvl/linalg.hpp>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cvl::quat {

/// Q<i, j> with i^2 = -a, j^2 = -b, k = ij = -ji.
struct Algebra {
    std::int64_t a = 1, b = 1;
    friend bool operator==(const Algebra&, const Algebra&) = default;
};

class Quaternion {
public:
    Quaternion() = default;
    Quaternion(Algebra alg, Rational x, Rational y = 0, Rational z = 0, Rational w = 0)
        : alg_(alg), c_{std::move(x), std::move(y), std::move(z), std::move(w)} {}

    const Algebra& algebra() const { return alg_; }
    const Rational& operator[](std::size_t k) const { return c_[k]; }
    const std::array<Rational, 4>& coords() const { return c_; }

    Rational trace() const { return 2 * c_[0]; }
    Rational norm() const {
        return c_[0] * c_[0] + alg_.a * c_[1] * c_[1] + alg_.b * c_[2] * c_[2] + alg_.a * alg_.b * c_[3] * c_[3];
    }
    Quaternion conj() const { return {alg_, c_[0], -c_[1], -c_[2], -c_[3]}; }

    friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
        return {p.alg_, p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]};
    }
    friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
        return {p.alg_, p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]};
    }
    friend Quaternion operator*(const Rational& s, const Quaternion& q) {
        return {q.alg_, s * q[0], s * q[1], s * q[2], s * q[3]};
    }
    friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        const std::int64_t a = p.alg_.a, b = p.alg_.b;
        const auto& [x1, y1, z1, w1] = p.c_;
        const auto& [x2, y2, z2, w2] = q.c_;
        return {p.alg_,
                x1 * x2 - a * y1 * y2 - b * z1 * z2 - a * b * w1 * w2,
                x1 * y2 + y1 * x2 + b * (z1 * w2 - w1 * z2),
                x1 * z2 + z1 * x2 + a * (w1 * y2 - y1 * w2),
                x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2};
    }
    friend bool operator==(const Quaternion& p, const Quaternion& q) { return p.c_ == q.c_; }
    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ')';
    }

private:
    Algebra alg_;
    std::array<Rational, 4> c_{};
};

/// t(p * conj(q)), the bilinear form attached to the norm.
inline Rational pairing(const Quaternion& p, const Quaternion& q) {
    const Algebra& alg = p.algebra();
    return 2 * (p[0] * q[0] + alg.a * p[1] * q[1] + alg.b * p[2] * q[2] + alg.a * alg.b * p[3] * q[3]);
}

inline Rational rational_gcd(const std::vector<Rational>& values) {
    BigInt den = 1;
    for (const auto& v : values) den = boost::multiprecision::lcm(den, denominator(v));
    BigInt g = 0;
    for (const auto& v : values) g = boost::multiprecision::gcd(g, numerator(Rational(v * den)));
    return Rational(g, den);
}

/// A full-rank Z-lattice in the algebra, kept in Hermite normal form.
class Lattice {
public:
    Lattice() = default;

    static Lattice from_generators(Algebra alg, const std::vector<Quaternion>& gens) {
        linalg::RatMatrix rows;
        for (const auto& g : gens) rows.emplace_back(g.coords().begin(), g.coords().end());
        auto basis = linalg::lattice_basis(rows);
        if (basis.size() != 4) throw InvariantViolation("lattice generators do not span rank 4");
        Lattice l;
        l.alg_ = alg;
        for (std::size_t k = 0; k < 4; ++k) l.basis_[k] = Quaternion(alg, basis[k][0], basis[k][1], basis[k][2], basis[k][3]);
        return l;
    }

    const Algebra& algebra() const { return alg_; }
    const std::array<Quaternion, 4>& basis() const { return basis_; }

    linalg::RatVector coordinates(const Quaternion& q) const {
        linalg::RatMatrix m(4, linalg::RatVector(4));
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) m[c][r] = basis_[r][c];
        }
        return linalg::apply(linalg::inverse(m), linalg::RatVector(q.coords().begin(), q.coords().end()));
    }
    bool contains(const Quaternion& q) const {
        for (const auto& x : coordinates(q)) {
            if (denominator(x) != 1) return false;
        }
        return true;
    }
    bool contains(const Lattice& other) const {
        for (const auto& e : other.basis_) {
            if (!contains(e)) return false;
        }
        return true;
    }

    Lattice conjugate() const {
        std::vector<Quaternion> g;
        for (const auto& e : basis_) g.push_back(e.conj());
        return from_generators(alg_, g);
    }
    Lattice scaled(const Rational& s) const {
        std::vector<Quaternion> g;
        for (const auto& e : basis_) g.push_back(s * e);
        return from_generators(alg_, g);
    }
    friend Lattice operator*(const Lattice& l, const Lattice& r) {
        std::vector<Quaternion> g;
        for (const auto& x : l.basis_) {
            for (const auto& y : r.basis_) g.push_back(x * y);
        }
        return from_generators(l.alg_, g);
    }

    /// gcd of n(x) over the lattice.
    Rational norm() const {
        std::vector<Rational> v;
        for (std::size_t k = 0; k < 4; ++k) {
            v.push_back(basis_[k].norm());
            for (std::size_t l = k + 1; l < 4; ++l) v.push_back(pairing(basis_[k], basis_[l]));
        }
        return rational_gcd(v);
    }

    /// Integer matrix A with v^T A v = 2 n(x) / scale.
    lattice::Gram<4> doubled_gram(const Rational& scale = 1) const {
        lattice::Gram<4> g{};
        for (std::size_t k = 0; k < 4; ++k) {
            for (std::size_t l = 0; l < 4; ++l) {
                Rational v = pairing(basis_[k], basis_[l]) / scale;
                if (denominator(v) != 1) throw InvariantViolation("norm form is not integral at this scale");
                g[k][l] = static_cast<std::int64_t>(numerator(v));
            }
        }
        return g;
    }

    friend bool operator==(const Lattice& l, const Lattice& r) { return l.basis_ == r.basis_; }

private:
    Algebra alg_;
    std::array<Quaternion, 4> basis_{};
};

struct QuaternionOrder {
    Lattice lattice;
    std::int64_t level = 0;

    const Algebra& algebra() const { return lattice.algebra(); }
    Quaternion one() const { return Quaternion(algebra(), 1); }

    /// sqrt(det t(e_k conj e_l)).
    BigInt reduced_discriminant() const {
        linalg::RatMatrix m(4, linalg::RatVector(4));
        for (std::size_t k = 0; k < 4; ++k) {
            for (std::size_t l = 0; l < 4; ++l) m[k][l] = pairing(lattice.basis()[k], lattice.basis()[l]);
        }
        Rational det = linalg::determinant(m);
        if (denominator(det) != 1) throw InvariantViolation("order discriminant is not integral");
        BigInt d = numerator(det);
        BigInt r = boost::multiprecision::sqrt(d);
        if (r * r != d) throw InvariantViolation("order discriminant is not a square");
        return r;
    }

    /// Checks the order axioms; throws InvariantViolation on failure.
    void verify(bool maximal = true) const {
        if (!lattice.contains(one())) throw InvariantViolation("order does not contain 1");
        for (const auto& x : lattice.basis()) {
            if (denominator(x.trace()) != 1 || denominator(x.norm()) != 1) {
                throw InvariantViolation("order element with non-integral trace or norm");
            }
            for (const auto& y : lattice.basis()) {
                if (!lattice.contains(x * y)) throw InvariantViolation("order is not closed under multiplication");
            }
        }
        if (maximal && reduced_discriminant() != level) throw InvariantViolation("order is not maximal at the level");
    }

    /// |O^x|, the number of elements of norm 1.
    std::int64_t unit_count() const {
        return lattice::count_by_value(lattice.doubled_gram(), 2)[2];
    }
};

inline Algebra algebra_for_level(std::int64_t level) {
    if (level == 2) return {1, 1};
    return {1, level};
}

/// A maximal order of the algebra ramified at {infinity, N}.
inline QuaternionOrder maximal_order(std::int64_t level) {
    if (!arith::is_prime(level)) throw PreconditionError("maximal_order: level must be prime");
    if (level != 2 && level % 4 != 3) throw PreconditionError("unsupported ramification class");
    const Algebra alg = algebra_for_level(level);
    const Rational half(1, 2);
    std::vector<Quaternion> basis;
    if (level == 2) {
        // Hurwitz order.
        basis = {Quaternion(alg, 1), Quaternion(alg, 0, 1), Quaternion(alg, 0, 0, 1),
                 Quaternion(alg, half, half, half, half)};
    } else {
        basis = {Quaternion(alg, 1), Quaternion(alg, 0, 1), Quaternion(alg, half, 0, half),
                 Quaternion(alg, 0, half, 0, half)};
    }
    QuaternionOrder r{Lattice::from_generators(alg, basis), level};
    r.verify();
    return r;
}

struct GaussianInteger {
    std::int64_t re = 0, im = 0;
    std::int64_t norm() const { return re * re + im * im; }
    friend bool operator==(const GaussianInteger&, const GaussianInteger&) = default;
};

/// a|x|^2 + Re(conj(b) x conj(y)) + c|y|^2, discriminant n(b) - 4ac = -N.
struct HermitianForm {
    std::int64_t a = 0;
    GaussianInteger b;
    std::int64_t c = 0;

    std::int64_t discriminant() const { return b.norm() - 4 * a * c; }
    friend bool operator==(const HermitianForm&, const HermitianForm&) = default;
    friend std::ostream& operator<<(std::ostream& os, const HermitianForm& h) {
        os << '(' << h.a << ", ";
        if (h.b.im == 0) {
            os << h.b.re;
        } else {
            os << h.b.re << (h.b.im < 0 ? " - " : " + ") << std::llabs(h.b.im) << 'i';
        }
        return os << ", " << h.c << ')';
    }
};

struct LeftIdeal {
    Lattice lattice;
    Rational norm;
};

struct IdealClass {
    LeftIdeal ideal;
    QuaternionOrder right_order;
    std::optional<HermitianForm> form;
    std::int64_t units = 0; // |R_i^x|
};

struct IdealClasses {
    QuaternionOrder order;
    std::vector<IdealClass> classes;

    std::size_t size() const { return classes.size(); }
    std::int64_t level() const { return order.level; }
};

/// The left ideal Z[i] a + Z[i] (b + j)/2 attached to a Hermitian form.
inline LeftIdeal ideal_from_form(const QuaternionOrder& r, const HermitianForm& h) {
    const Algebra alg = r.algebra();
    const Quaternion u(alg, h.a);
    const Quaternion v(alg, Rational(h.b.re, 2), Rational(h.b.im, 2), Rational(1, 2));
    const Quaternion i(alg, 0, 1);
    LeftIdeal ideal{Lattice::from_generators(alg, {u, i * u, v, i * v}), Rational(h.a)};
    for (const auto& x : r.lattice.basis()) {
        for (const auto& y : ideal.lattice.basis()) {
            if (!ideal.lattice.contains(x * y)) throw InvariantViolation("Hermitian form does not give a left ideal");
        }
    }
    if (ideal.lattice.norm() != ideal.norm) throw InvariantViolation("ideal norm mismatch");
    return ideal;
}

inline QuaternionOrder right_order(const QuaternionOrder& r, const LeftIdeal& ideal) {
    QuaternionOrder out{(ideal.lattice.conjugate() * ideal.lattice).scaled(1 / ideal.norm), r.level};
    out.verify();
    return out;
}

/// Doubled norm form on conj(I) J normalized by n(I) n(J).
inline lattice::Gram<4> connecting_gram(const LeftIdeal& i, const LeftIdeal& j) {
    auto g = (i.lattice.conjugate() * j.lattice).doubled_gram(i.norm * j.norm);
    lattice::reduce(g);
    return g;
}

/// I and J are in the same class iff conj(I) J has an element of norm n(I) n(J).
inline bool equivalent(const LeftIdeal& i, const LeftIdeal& j) {
    return lattice::count_by_value(connecting_gram(i, j), 2)[2] > 0;
}

/// One ideal per left ideal class of R, with right orders, Hermitian forms and unit counts.
inline IdealClasses left_ideal_classes(const QuaternionOrder& r) {
    IdealClasses out{r, {}};
    const std::int64_t n = r.level;
    auto add_class = [&](LeftIdeal ideal, std::optional<HermitianForm> form) {
        QuaternionOrder ro = right_order(r, ideal);
        std::int64_t units = ro.unit_count();
        out.classes.push_back({std::move(ideal), std::move(ro), form, units});
    };
    if (n == 2) {
        add_class({r.lattice, Rational(1)}, std::nullopt);
    } else {
        // Reduced forms: |Re b|, |Im b| <= a <= c, so a^2 <= N/2; b is taken with
        // odd real part and even imaginary part (every class has such a b up to units).
        auto signed_order = [](std::int64_t bound, std::int64_t parity) {
            std::vector<std::int64_t> v;
            for (std::int64_t t = parity; t <= bound; t += 2) {
                v.push_back(t);
                if (t != 0) v.push_back(-t);
            }
            return v;
        };
        for (std::int64_t a = 1; 2 * a * a <= n; ++a) {
            for (std::int64_t re : signed_order(a, 1)) {
                for (std::int64_t im : signed_order(a, 0)) {
                    HermitianForm h{a, {re, im}, 0};
                    const std::int64_t t = h.b.norm() + n;
                    if (t % (4 * a) != 0) continue;
                    h.c = t / (4 * a);
                    if (h.c < a) continue;
                    LeftIdeal cand = ideal_from_form(r, h);
                    bool known = false;
                    for (const auto& cls : out.classes) {
                        if (equivalent(cls.ideal, cand)) {
                            known = true;
                            break;
                        }
                    }
                    if (!known) add_class(std::move(cand), h);
                }
            }
        }
    }
    // Eichler mass formula: sum 1/|R_i^x| = (N - 1)/24.
    Rational mass = 0;
    for (const auto& cls : out.classes) mass += Rational(1, cls.units);
    if (mass != Rational(n - 1, 24)) throw InvariantViolation("ideal classes fail the mass formula");
    return out;
}

struct BrandtMatrix {
    std::int64_t m = 0;
    linalg::RatMatrix entries;

    std::size_t size() const { return entries.size(); }
    friend bool operator==(const BrandtMatrix& l, const BrandtMatrix& r) { return l.entries == r.entries; }
};

inline std::string to_string(const BrandtMatrix& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += (i ? ",[" : "[");
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (j) s += ',';
            s += b.entries[i][j].str();
        }
        s += ']';
    }
    return s + "]";
}

/// Brandt matrices of a fixed level.
///
/// Entry (i, j) of B(m) is #{x in conj(I_i) I_j : n(x) = m n(I_i) n(I_j)} / |R_i^x|.
/// With this orientation B(m) acts on column vectors and B(m) e_f = a_m e_f.
class BrandtFamily {
public:
    explicit BrandtFamily(const IdealClasses& classes) : classes_(&classes) {
        const std::size_t n = classes.size();
        grams_.assign(n, std::vector<lattice::Gram<4>>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                grams_[i][j] = connecting_gram(classes.classes[i].ideal, classes.classes[j].ideal);
                grams_[j][i] = grams_[i][j];
            }
        }
    }

    std::size_t size() const { return grams_.size(); }
    const IdealClasses& classes() const { return *classes_; }

    /// counts[m] = #{x in conj(I_i) I_j of normalized norm m}, m = 0..bound.
    std::vector<std::int64_t> pair_counts(std::size_t i, std::size_t j, std::int64_t bound, unsigned jobs = 1) const {
        auto doubled = lattice::count_by_value(grams_[i][j], 2 * bound, jobs);
        std::vector<std::int64_t> out(static_cast<std::size_t>(bound) + 1);
        for (std::int64_t m = 0; m <= bound; ++m) out[static_cast<std::size_t>(m)] = doubled[static_cast<std::size_t>(2 * m)];
        return out;
    }

    /// B(0), ..., B(bound).
    std::vector<BrandtMatrix> matrices(std::int64_t bound, unsigned jobs = 1) const {
        if (bound < 0) throw PreconditionError("brandt_matrix: m must be >= 0");
        const std::size_t n = size();
        std::vector<BrandtMatrix> out(static_cast<std::size_t>(bound) + 1);
        for (std::int64_t m = 0; m <= bound; ++m) {
            out[static_cast<std::size_t>(m)] = {m, linalg::zeros(n, n)};
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                auto counts = pair_counts(i, j, bound, jobs);
                for (std::int64_t m = 0; m <= bound; ++m) {
                    const auto c = counts[static_cast<std::size_t>(m)];
                    auto& e = out[static_cast<std::size_t>(m)].entries;
                    e[i][j] = Rational(c, classes_->classes[i].units);
                    e[j][i] = Rational(c, classes_->classes[j].units);
                }
            }
        }
        for (std::int64_t m = 1; m <= bound; ++m) {
            for (const auto& row : out[static_cast<std::size_t>(m)].entries) {
                for (const auto& x : row) {
                    if (denominator(x) != 1) throw InvariantViolation("Brandt matrix entry is not integral");
                }
            }
        }
        return out;
    }

    BrandtMatrix matrix(std::int64_t m) const { return matrices(m).back(); }

private:
    const IdealClasses* classes_;
    std::vector<std::vector<lattice::Gram<4>>> grams_;
};

inline BrandtMatrix brandt_matrix(const IdealClasses& classes, std::int64_t m) {
    return BrandtFamily(classes).matrix(m);
}

enum class EigenKind { Eisenstein, Cusp };

inline const char* to_string(EigenKind k) { return k == EigenKind::Eisenstein ? "eisenstein" : "cusp"; }

struct Eigenform {
    std::vector<BigInt> vector;             // primitive integral, first nonzero entry positive
    std::map<std::int64_t, Rational> eigenvalues; // m -> lambda_m for 1 <= m <= probe bound
    EigenKind kind = EigenKind::Cusp;

    Rational eigenvalue(std::int64_t m) const { return eigenvalues.at(m); }
};

/// A B-stable piece the rational probes did not split into lines.
struct ResidualBlock {
    std::size_t dimension = 0;
    std::map<std::int64_t, Rational> eigenvalues; // common rational eigenvalues seen so far (may be empty)
};

struct EigenDecomposition {
    std::vector<Eigenform> forms;
    std::vector<ResidualBlock> residual;

    const Eigenform* eisenstein() const {
        for (const auto& f : forms) {
            if (f.kind == EigenKind::Eisenstein) return &f;
        }
        return nullptr;
    }
    std::vector<const Eigenform*> cusp_forms() const {
        std::vector<const Eigenform*> out;
        for (const auto& f : forms) {
            if (f.kind == EigenKind::Cusp) out.push_back(&f);
        }
        return out;
    }
};

inline std::vector<BigInt> primitive_integral(const linalg::RatVector& v) {
    BigInt den = 1;
    for (const auto& x : v) den = boost::multiprecision::lcm(den, denominator(x));
    std::vector<BigInt> out;
    BigInt g = 0;
    for (const auto& x : v) {
        out.push_back(numerator(Rational(x * den)));
        g = boost::multiprecision::gcd(g, out.back());
    }
    Rational sign = 1;
    for (const auto& x : out) {
        if (x != 0) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    }
    for (auto& x : out) x = x / g * numerator(sign);
    return out;
}

/// Simultaneous rational eigenvectors of B(1..probe_bound).
///
/// Eigenvalues at each prime p are searched in the Hasse window |lambda| <= 2 sqrt p
/// together with p + 1; pieces with no rational eigenvalue are kept as residual blocks.
inline EigenDecomposition eigenforms(const BrandtFamily& family, std::int64_t probe_bound) {
    if (probe_bound < 2) throw PreconditionError("eigenforms: probe bound must be >= 2");
    const std::size_t n = family.size();
    const std::int64_t level = family.classes().level();
    auto mats = family.matrices(probe_bound);
    for (std::int64_t m = 1; m <= probe_bound; ++m) {
        for (std::int64_t k = m + 1; k <= probe_bound; ++k) {
            const auto& x = mats[static_cast<std::size_t>(m)].entries;
            const auto& y = mats[static_cast<std::size_t>(k)].entries;
            if (linalg::multiply(x, y) != linalg::multiply(y, x)) {
                throw InvariantViolation("Brandt matrices do not commute");
            }
        }
    }
    struct Piece {
        std::vector<linalg::RatVector> basis;
        std::map<std::int64_t, Rational> eigenvalues;
    };
    std::vector<Piece> pieces{{{}, {}}};
    for (std::size_t k = 0; k < n; ++k) {
        linalg::RatVector e(n, Rational(0));
        e[k] = 1;
        pieces[0].basis.push_back(e);
    }
    EigenDecomposition out;
    for (std::int64_t p : arith::primes_up_to(probe_bound)) {
        const auto& bp = mats[static_cast<std::size_t>(p)].entries;
        std::vector<std::int64_t> candidates;
        const auto window = static_cast<std::int64_t>(std::floor(2 * std::sqrt(static_cast<double>(p))));
        for (std::int64_t l = -window; l <= window; ++l) candidates.push_back(l);
        candidates.push_back(p + 1);
        std::vector<Piece> next;
        for (auto& piece : pieces) {
            if (piece.basis.size() == 1) {
                next.push_back(std::move(piece));
                continue;
            }
            // Columns of W are the basis vectors of the piece.
            const std::size_t r = piece.basis.size();
            linalg::RatMatrix w(n, linalg::RatVector(r));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t c = 0; c < r; ++c) w[i][c] = piece.basis[c][i];
            }
            std::size_t found = 0;
            for (std::int64_t lambda : candidates) {
                auto shifted = bp;
                for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= lambda;
                auto kernel = linalg::nullspace(linalg::multiply(shifted, w));
                if (kernel.empty()) continue;
                Piece sub{{}, piece.eigenvalues};
                sub.eigenvalues[p] = lambda;
                for (const auto& coeffs : kernel) sub.basis.push_back(linalg::apply(w, coeffs));
                found += sub.basis.size();
                next.push_back(std::move(sub));
            }
            if (found < r) out.residual.push_back({r - found, piece.eigenvalues});
        }
        pieces = std::move(next);
    }
    for (auto& piece : pieces) {
        if (piece.basis.size() != 1) {
            out.residual.push_back({piece.basis.size(), piece.eigenvalues});
            continue;
        }
        Eigenform f;
        f.vector = primitive_integral(piece.basis[0]);
        linalg::RatVector e(f.vector.begin(), f.vector.end());
        std::size_t pivot = 0;
        while (e[pivot] == 0) ++pivot;
        for (std::int64_t m = 1; m <= probe_bound; ++m) {
            auto image = linalg::apply(mats[static_cast<std::size_t>(m)].entries, e);
            Rational lambda = image[pivot] / e[pivot];
            for (std::size_t i = 0; i < n; ++i) {
                if (image[i] != lambda * e[i]) throw InvariantViolation("eigenvector check failed");
            }
            f.eigenvalues[m] = lambda;
        }
        bool eisenstein = true;
        for (std::int64_t p : arith::primes_up_to(probe_bound)) {
            if (level % p != 0 && f.eigenvalues[p] != p + 1) eisenstein = false;
        }
        f.kind = eisenstein ? EigenKind::Eisenstein : EigenKind::Cusp;
        out.forms.push_back(std::move(f));
    }
    return out;
}

} // namespace cvl::quat
