#pragma once

// Ternary trace-zero lattices inside the right orders and their weight 3/2
// theta series.

#include <cvl/lattice.hpp>
#include <cvl/quat.hpp>

#include <array>
#include <vector>

namespace cvl::theta {

/// L = {w in R : t(w) = 0, w in Z + 2R}, with n(v) = v^T G v on the basis.
struct TernaryLattice {
    lattice::Gram<3> gram{};
    std::array<quat::Quaternion, 3> basis{};

    BigInt determinant() const { return lattice::determinant(gram); }
};

/// Since w = x + 2r with t(w) = 0 forces x = -t(r), L is the image of r -> 2r - t(r).
inline TernaryLattice ternary_lattice(const quat::QuaternionOrder& r) {
    const auto alg = r.algebra();
    std::vector<quat::Quaternion> gens;
    for (const auto& e : r.lattice.basis()) gens.push_back(Rational(2) * e - quat::Quaternion(alg, e.trace()));
    linalg::RatMatrix rows;
    for (const auto& g : gens) rows.emplace_back(g.coords().begin(), g.coords().end());
    auto basis = linalg::lattice_basis(rows);
    if (basis.size() != 3) throw InvariantViolation("ternary lattice does not have rank 3");
    std::array<quat::Quaternion, 3> b;
    for (std::size_t k = 0; k < 3; ++k) b[k] = quat::Quaternion(alg, basis[k][0], basis[k][1], basis[k][2], basis[k][3]);
    lattice::Gram<3> g{};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t l = 0; l < 3; ++l) {
            Rational v = quat::pairing(b[k], b[l]) / 2;
            if (denominator(v) != 1) throw InvariantViolation("ternary lattice norm form is not integral");
            g[k][l] = static_cast<std::int64_t>(numerator(v));
        }
    }
    auto u = lattice::reduce(g);
    TernaryLattice out;
    out.gram = g;
    for (std::size_t k = 0; k < 3; ++k) {
        quat::Quaternion q(alg, 0);
        for (std::size_t l = 0; l < 3; ++l) q = q + Rational(u[k][l]) * b[l];
        out.basis[k] = q;
    }
    return out;
}

/// Kohnen support: -d is a discriminant and (-d/N) != 1.
inline bool in_kohnen_support(std::int64_t d, std::int64_t level) {
    if (d == 0) return true;
    const std::int64_t r = arith::mod(-d, 4);
    return (r == 0 || r == 1) && arith::kronecker(-d, level) != 1;
}

/// sum_d coeff[d] q^d for d = 0..X.
struct HalfIntegralForm {
    std::int64_t level = 0;
    std::int64_t bound = 0;
    std::vector<Rational> coeff;

    const Rational& operator[](std::int64_t d) const { return coeff.at(static_cast<std::size_t>(d)); }
    /// m_D = coeff[|D|].
    const Rational& m(std::int64_t disc) const { return (*this)[disc < 0 ? -disc : disc]; }

    bool is_zero() const {
        for (const auto& c : coeff) {
            if (c != 0) return false;
        }
        return true;
    }
    /// Indices d <= X with nonzero coefficient off the Kohnen support.
    std::vector<std::int64_t> support_violations() const {
        std::vector<std::int64_t> out;
        for (std::int64_t d = 0; d <= bound; ++d) {
            if ((*this)[d] != 0 && !in_kohnen_support(d, level)) out.push_back(d);
        }
        return out;
    }
};

/// g_L = (1/2) sum_{w in L} q^{n(w)} up to q^X.
inline HalfIntegralForm theta_coefficients(const TernaryLattice& l, std::int64_t bound, std::int64_t level = 0,
                                           unsigned jobs = 1) {
    if (bound < 0) throw PreconditionError("theta_coefficients: X must be >= 0");
    HalfIntegralForm out{level, bound, {}};
    if (bound == 0) {
        out.coeff = {Rational(1, 2)};
        return out;
    }
    auto counts = lattice::count_by_value(l.gram, bound, jobs);
    out.coeff.resize(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        const auto c = counts[n];
        if (c == 0) continue;
        out.coeff[n] = c % 2 == 0 ? Rational(c / 2) : Rational(c, 2);
    }
    return out;
}

/// Ternary lattices of all right orders, index-aligned with the ideal classes.
inline std::vector<TernaryLattice> ternary_lattices(const quat::IdealClasses& classes) {
    std::vector<TernaryLattice> out;
    for (const auto& c : classes.classes) out.push_back(ternary_lattice(c.right_order));
    const BigInt det = out.front().determinant();
    for (const auto& l : out) {
        if (l.determinant() != det) throw InvariantViolation("ternary lattices have different determinants");
    }
    return out;
}

/// g = sum_i e(i) g_i.
inline HalfIntegralForm weight32_form(const std::vector<BigInt>& e, const std::vector<TernaryLattice>& lattices,
                                      std::int64_t bound, std::int64_t level, unsigned jobs = 1) {
    if (e.size() != lattices.size()) throw PreconditionError("weight32_form: eigenvector and lattice count differ");
    HalfIntegralForm g{level, bound, std::vector<Rational>(static_cast<std::size_t>(bound) + 1, Rational(0))};
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto gi = theta_coefficients(lattices[i], bound, level, jobs);
        for (std::size_t d = 0; d < g.coeff.size(); ++d) g.coeff[d] += Rational(e[i]) * gi.coeff[d];
    }
    return g;
}

inline HalfIntegralForm weight32_form(const quat::Eigenform& f, const std::vector<TernaryLattice>& lattices,
                                      std::int64_t bound, std::int64_t level, unsigned jobs = 1) {
    return weight32_form(f.vector, lattices, bound, level, jobs);
}

/// c(p^2 d) + (-d/p) c(d) + p c(d/p^2), the T(p^2) image coefficient at d.
inline Rational hecke_image(const HalfIntegralForm& g, std::int64_t p, std::int64_t d) {
    if (p * p * d > g.bound) throw PreconditionError("hecke_image: coefficient beyond bound");
    Rational v = g[p * p * d] + arith::kronecker(-d, p) * g[d];
    if (d % (p * p) == 0) v += p * g[d / (p * p)];
    return v;
}

} // namespace cvl::theta
