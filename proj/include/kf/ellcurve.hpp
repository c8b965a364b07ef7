#pragma once

// The supersingular curve E: y^2 + y = x^3 over GF(2^k): group law, the
// order-3 automorphism (x,y) -> (zeta x, y), point counting by
// enumeration, and the norm calculus on Z[phi] with phi^2 = -1 - phi.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kf/errors.hpp"
#include "kf/gf.hpp"

namespace kf::ellcurve {

using gf::FieldElement;
using gf::SpecPtr;

/// A point of E(GF(2^k)): the point at infinity or an affine point
/// satisfying y^2 + y = x^3 (checked on construction).
class EllipticPoint {
public:
    static EllipticPoint infinity(const SpecPtr& spec) { return EllipticPoint(spec); }

    static EllipticPoint affine(FieldElement x, FieldElement y) {
        if (x.spec()->p() != 2) throw error("EllipticPoint: curve lives in characteristic 2");
        if (y * y + y != x * x * x)
            throw error("EllipticPoint: (" + x.to_string() + "," + y.to_string() +
                        ") is not on y^2 + y = x^3");
        return EllipticPoint(std::move(x), std::move(y));
    }

    bool is_infinity() const { return infinity_; }
    const FieldElement& x() const { require_affine(); return *x_; }
    const FieldElement& y() const { require_affine(); return *y_; }
    const SpecPtr& spec() const { return spec_; }

    bool operator==(const EllipticPoint& o) const {
        if (infinity_ != o.infinity_) return false;
        if (infinity_) return *spec_ == *o.spec_;
        return *x_ == *o.x_ && *y_ == *o.y_;
    }
    bool operator!=(const EllipticPoint& o) const { return !(*this == o); }
    bool operator<(const EllipticPoint& o) const {
        if (infinity_ != o.infinity_) return infinity_; // infinity sorts first
        if (infinity_) return false;
        if (*x_ != *o.x_) return *x_ < *o.x_;
        return *y_ < *o.y_;
    }

    std::string to_string() const {
        if (infinity_) return "inf";
        return "(" + x_->to_string() + "," + y_->to_string() + ")";
    }

private:
    explicit EllipticPoint(SpecPtr spec) : infinity_(true), spec_(std::move(spec)) {}
    EllipticPoint(FieldElement x, FieldElement y)
        : infinity_(false), spec_(x.spec()), x_(std::move(x)), y_(std::move(y)) {}
    void require_affine() const {
        if (infinity_) throw error("EllipticPoint: point at infinity has no coordinates");
    }

    bool infinity_;
    SpecPtr spec_;
    std::optional<FieldElement> x_, y_;
};

/// Negation: -(x,y) = (x, y+1).
inline EllipticPoint ec_neg(const EllipticPoint& P) {
    if (P.is_infinity()) return P;
    return EllipticPoint::affine(P.x(), P.y() + FieldElement::one(P.spec()));
}

/// Group law for y^2 + y = x^3 in characteristic 2: chord slope
/// (y1+y2)/(x1+x2), tangent slope x1^2, then x3 = s^2 + x1 + x2 and
/// y3 = s(x1+x3) + y1 + 1.
inline EllipticPoint ec_add(const EllipticPoint& P, const EllipticPoint& Q) {
    if (*P.spec() != *Q.spec()) throw error("ec_add: points from different fields");
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const FieldElement one = FieldElement::one(P.spec());
    if (P.x() == Q.x() && Q.y() == P.y() + one) return EllipticPoint::infinity(P.spec());
    FieldElement s = (P.x() == Q.x()) ? P.x() * P.x()
                                      : (P.y() + Q.y()) / (P.x() + Q.x());
    FieldElement x3 = s * s + P.x() + Q.x();
    FieldElement y3 = s * (P.x() + x3) + P.y() + one;
    return EllipticPoint::affine(x3, y3);
}

inline EllipticPoint ec_mul(const EllipticPoint& P, std::int64_t n) {
    EllipticPoint acc = EllipticPoint::infinity(P.spec());
    EllipticPoint base = n < 0 ? ec_neg(P) : P;
    std::int64_t m = n < 0 ? -n : n;
    while (m > 0) {
        if (m & 1) acc = ec_add(acc, base);
        base = ec_add(base, base);
        m >>= 1;
    }
    return acc;
}

/// The automorphism (x,y) -> (zeta^power x, y); needs F4 in the field.
inline EllipticPoint apply_aut(const EllipticPoint& P, int power) {
    if (power != 1 && power != 2) throw error("apply_aut: power must be 1 or 2");
    FieldElement z = gf::zeta(P.spec());
    if (P.is_infinity()) return P;
    return EllipticPoint::affine(z.pow(power) * P.x(), P.y());
}

/// All points of E over the given field, infinity first.
inline std::vector<EllipticPoint> enumerate_points(const SpecPtr& spec) {
    std::vector<EllipticPoint> pts;
    pts.push_back(EllipticPoint::infinity(spec));
    for (const FieldElement& x : gf::enumerate(spec))
        for (const FieldElement& y : gf::enumerate(spec))
            if (y * y + y == x * x * x) pts.push_back(EllipticPoint::affine(x, y));
    return pts;
}

inline std::int64_t count_points(const SpecPtr& spec) {
    return static_cast<std::int64_t>(enumerate_points(spec).size());
}

/// Fixed points of the automorphism over the given field.
inline std::vector<EllipticPoint> fixed_points(const SpecPtr& spec) {
    std::vector<EllipticPoint> out;
    for (const EllipticPoint& P : enumerate_points(spec))
        if (apply_aut(P, 1) == P) out.push_back(P);
    return out;
}

/// An endomorphism a + b*phi of E, phi the order-3 automorphism.
/// Z[phi] is the Eisenstein order: phi^2 = -1 - phi.
struct EndoElement {
    std::int64_t a = 0;
    std::int64_t b = 0;

    bool operator==(const EndoElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const EndoElement& o) const { return !(*this == o); }

    EndoElement operator+(const EndoElement& o) const { return {a + o.a, b + o.b}; }
    EndoElement operator-(const EndoElement& o) const { return {a - o.a, b - o.b}; }
    EndoElement operator-() const { return {-a, -b}; }
    EndoElement operator*(const EndoElement& o) const {
        // (a + b phi)(c + d phi) = ac - bd + (ad + bc - bd) phi
        return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
    }

    static EndoElement identity() { return {1, 0}; }
    static EndoElement phi() { return {0, 1}; }
    static EndoElement phi_squared() { return {-1, -1}; }
};

/// deg(a + b phi) = a^2 - ab + b^2, the Eisenstein norm; zero only for
/// the zero endomorphism.
inline std::int64_t endo_degree(const EndoElement& e) {
    return e.a * e.a - e.a * e.b + e.b * e.b;
}

/// Evaluate a + b*phi on a point: aP + b*phi(P). Needs F4 in the field
/// when b != 0.
inline EllipticPoint apply_endo(const EndoElement& e, const EllipticPoint& P) {
    EllipticPoint aP = ec_mul(P, e.a);
    if (e.b == 0) return aP;
    return ec_add(aP, ec_mul(apply_aut(P, 1), e.b));
}

/// Intersection number of the graphs of two distinct endomorphisms on
/// E x E: the degree of their difference.
inline std::int64_t graph_intersection(const EndoElement& e, const EndoElement& f) {
    if (e == f) throw error("graph_intersection: graphs must be distinct");
    return endo_degree(e - f);
}

} // namespace kf::ellcurve
