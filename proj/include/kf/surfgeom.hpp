#pragma once

// The rank-4 divisor lattice on the product surface E x E spanned by
// C1 = E x 0, C2 = 0 x E, C3 = diagonal, C4 = graph of the order-3
// automorphism, with the primed basis C_i' = C_i - C1 - C2 (i = 3,4)
// that splits the form as hyperbolic (+) [[-2,1],[1,-2]]. Positions of
// height-one subgroup embeddings are points (i:j) of the projective
// line; their classification drives the sublattice V_B and
// v = dim_F2(V_A / V_B).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kf/ellcurve.hpp"
#include "kf/errors.hpp"
#include "kf/gf.hpp"
#include "kf/lattice.hpp"

namespace kf::surfgeom {

using ellcurve::EndoElement;
using gf::FieldElement;
using gf::SpecPtr;
using lattice::Int;

enum class Basis { C, Cprime };

/// Gram matrix of C1..C4.
inline lattice::Matrix gram_c_basis() {
    return {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 3}, {1, 1, 3, 0}};
}

/// Gram matrix of the primed basis: hyperbolic plane (+) A2(-1) block.
inline lattice::Matrix gram_primed_basis() {
    return {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -2}};
}

inline lattice::IntLattice v_a_lattice() {
    return lattice::IntLattice::from_gram(gram_c_basis(), {"C1", "C2", "C3", "C4"});
}

/// An integer divisor class sum n_i C_i (or sum n_i C_i' when flagged).
class DivisorClass {
public:
    DivisorClass(std::array<std::int64_t, 4> coeffs, Basis basis)
        : n_(coeffs), basis_(basis) {}

    static DivisorClass c_basis(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t n4) {
        return DivisorClass({n1, n2, n3, n4}, Basis::C);
    }
    static DivisorClass primed(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t n4) {
        return DivisorClass({n1, n2, n3, n4}, Basis::Cprime);
    }
    /// The basis curve C_j, 1 <= j <= 4.
    static DivisorClass curve(int j) {
        if (j < 1 || j > 4) throw error("DivisorClass::curve: index out of range");
        std::array<std::int64_t, 4> n{0, 0, 0, 0};
        n[static_cast<size_t>(j - 1)] = 1;
        return DivisorClass(n, Basis::C);
    }

    const std::array<std::int64_t, 4>& coeffs() const { return n_; }
    Basis basis() const { return basis_; }

    /// C3 = C3' + C1 + C2 and C4 = C4' + C1 + C2; conversions are
    /// mutually inverse.
    DivisorClass to_primed() const {
        if (basis_ == Basis::Cprime) return *this;
        return DivisorClass({n_[0] + n_[2] + n_[3], n_[1] + n_[2] + n_[3], n_[2], n_[3]},
                            Basis::Cprime);
    }
    DivisorClass to_c() const {
        if (basis_ == Basis::C) return *this;
        return DivisorClass({n_[0] - n_[2] - n_[3], n_[1] - n_[2] - n_[3], n_[2], n_[3]}, Basis::C);
    }

    bool operator==(const DivisorClass& o) const {
        return to_c().n_ == o.to_c().n_;
    }

private:
    std::array<std::int64_t, 4> n_;
    Basis basis_;
};

/// Intersection pairing via the primed-basis Gram form.
inline std::int64_t intersect(const DivisorClass& d1, const DivisorClass& d2) {
    const auto a = d1.to_primed().coeffs();
    const auto b = d2.to_primed().coeffs();
    const lattice::Matrix g = gram_primed_basis();
    Int acc = 0;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) acc += Int(a[i]) * g[i][j] * Int(b[j]);
    return static_cast<std::int64_t>(acc);
}

/// Pairings of the graph of e with the basis curves C1..C4. C1 is
/// itself the graph of the zero map and C2 meets every graph once;
/// C3, C4 are the graphs of 1 and phi.
inline std::array<std::int64_t, 4> graph_pairings(const EndoElement& e) {
    return {ellcurve::endo_degree(e), 1,
            ellcurve::endo_degree(e - EndoElement::identity()),
            ellcurve::endo_degree(e - EndoElement::phi())};
}

/// The divisor class of the graph of e, solved from the Gram system
/// <X, C_i> = (graph of e).C_i. Throws if the solution is not integral.
inline DivisorClass class_of_graph(const EndoElement& e) {
    const lattice::Matrix g = gram_c_basis();
    const std::array<std::int64_t, 4> p = graph_pairings(e);
    const Int d = lattice::det(g); // -3, nondegenerate
    std::array<std::int64_t, 4> x{};
    for (size_t i = 0; i < 4; ++i) {
        // Cramer: replace column i of G by p.
        lattice::Matrix gi = g;
        for (size_t r = 0; r < 4; ++r) gi[r][i] = p[r];
        Int num = lattice::det(gi);
        if (num % d != 0)
            throw verification_error("class_of_graph: non-integral solution for the graph class");
        x[i] = static_cast<std::int64_t>(num / d);
    }
    return DivisorClass(x, Basis::C);
}

/// Euler characteristic chi(O(D)) = D^2 / 2.
inline std::int64_t euler_char(const DivisorClass& d) {
    std::int64_t sq = intersect(d, d);
    if (sq % 2 != 0) throw verification_error("euler_char: self-intersection is odd");
    return sq / 2;
}

/// The nonzero 0/1 vectors in the primed basis with even Euler
/// characteristic; exactly five.
inline std::vector<std::array<std::int64_t, 4>> even_chi_vectors() {
    std::vector<std::array<std::int64_t, 4>> out;
    for (int mask = 1; mask < 16; ++mask) {
        std::array<std::int64_t, 4> n{};
        for (int i = 0; i < 4; ++i) n[static_cast<size_t>(i)] = (mask >> i) & 1;
        if (euler_char(DivisorClass(n, Basis::Cprime)) % 2 == 0) out.push_back(n);
    }
    return out;
}

/// A point (i:j) of the projective line over GF(2^k), encoding the
/// position of a height-one subgroup embedding by its tangent
/// direction. Stored in the normalized representative (1:j/i) or (0:1).
class AlphaPosition {
public:
    AlphaPosition(const FieldElement& i, const FieldElement& j) : i_(i), j_(j) {
        if (*i.spec() != *j.spec()) throw error("AlphaPosition: coordinates from different fields");
        if (i.is_zero() && j.is_zero()) throw error("AlphaPosition: (0:0) is not a point");
        if (!i_.is_zero()) {
            j_ = j_ / i_;
            i_ = FieldElement::one(i_.spec());
        } else {
            j_ = FieldElement::one(j_.spec());
        }
    }

    const FieldElement& i() const { return i_; }
    const FieldElement& j() const { return j_; }
    const SpecPtr& spec() const { return i_.spec(); }

    bool operator==(const AlphaPosition& o) const { return i_ == o.i_ && j_ == o.j_; }
    bool operator!=(const AlphaPosition& o) const { return !(*this == o); }

    /// True iff both normalized coordinates lie in F4.
    bool is_f4_rational() const {
        if (spec()->p() != 2 || spec()->k() % 2 != 0)
            throw error("AlphaPosition: field does not contain F4");
        return gf::in_subfield(i_, 2) && gf::in_subfield(j_, 2);
    }

    std::string to_string() const { return "(" + i_.to_string() + ":" + j_.to_string() + ")"; }

private:
    FieldElement i_, j_;
};

/// Tangent direction of C_j at the origin: C1 -> (1:0), C2 -> (0:1),
/// C3 -> (1:1), C4 -> (1:zeta), C5 -> (1:zeta^2). These exhaust the
/// F4-points of the projective line.
inline AlphaPosition curve_direction(const SpecPtr& spec, int j) {
    const FieldElement zero = FieldElement::zero(spec);
    const FieldElement one = FieldElement::one(spec);
    switch (j) {
        case 1: return AlphaPosition(one, zero);
        case 2: return AlphaPosition(zero, one);
        case 3: return AlphaPosition(one, one);
        case 4: return AlphaPosition(one, gf::zeta(spec));
        case 5: return AlphaPosition(one, gf::zeta(spec).pow(2));
        default: throw error("curve_direction: index must be 1..5");
    }
}

/// The curve C_j (1..5) whose tangent direction matches the position,
/// if any; empty exactly when the position is not F4-rational.
inline std::optional<int> containing_curve(const AlphaPosition& pos) {
    for (int j = 1; j <= 5; ++j)
        if (curve_direction(pos.spec(), j) == pos) return j;
    return std::nullopt;
}

/// Coordinates of C5 (the graph of the square of the automorphism) in
/// the C-basis, derived from its pairings.
inline DivisorClass c5_class() { return class_of_graph(EndoElement::phi_squared()); }

namespace detail {

// Generator matrix of V_B inside V_A: columns 2*e_1..2*e_4, plus the
// class of C_j when the position lies on a curve direction.
inline lattice::Matrix v_b_generators(const AlphaPosition& pos) {
    lattice::Matrix gens(4, std::vector<Int>(4, 0));
    for (size_t i = 0; i < 4; ++i) gens[i][i] = 2;
    if (std::optional<int> j = containing_curve(pos)) {
        DivisorClass extra = (*j <= 4) ? DivisorClass::curve(*j) : c5_class();
        const auto n = extra.to_c().coeffs();
        for (size_t i = 0; i < 4; ++i) gens[i].push_back(n[i]);
    }
    return gens;
}

} // namespace detail

/// The sublattice V_B of V_A determined by the position: 2*V_A plus the
/// one curve class containing the position, when there is one.
inline lattice::Sublattice v_b_lattice(const AlphaPosition& pos) {
    lattice::Matrix basis = lattice::basis_from_generators(detail::v_b_generators(pos));
    return lattice::Sublattice::make(v_a_lattice(), std::move(basis));
}

/// v = dim_F2(V_A / V_B), computed structurally from the Smith normal
/// form of the inclusion and cross-checked against the closed-form
/// F4-membership rule (v = 3 on F4-points, 4 otherwise). Disagreement
/// between the two routes is a hard error.
inline int compute_v(const AlphaPosition& pos) {
    std::vector<Int> inv = lattice::quotient_invariants(detail::v_b_generators(pos));
    int v = 0;
    for (const Int& d : inv) {
        if (d != 1 && d != 2)
            throw verification_error("compute_v: quotient V_A/V_B is not annihilated by 2");
        if (d == 2) ++v;
    }
    int rule = pos.is_f4_rational() ? 3 : 4;
    if (v != rule)
        throw verification_error("compute_v: structural value " + std::to_string(v) +
                                 " disagrees with the F4-membership rule " + std::to_string(rule));
    return v;
}

} // namespace kf::surfgeom
