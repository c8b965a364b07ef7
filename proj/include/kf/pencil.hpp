#pragma once

// Pencil data (p, n, r, s): a pair of degree-n binary forms without
// common zeros. Provides the dualizing-sheaf twist np - n - 2, the Lie
// algebra splitting (-np, n), per-fiber positions (r(t):s(t)), the
// count of fibers with F4-rational position, and symbolic plus graded
// linear-algebra verification of the length-two resolution
//
//   0 -> R(-n) (+) R(-np) --phi2--> R (+) R (+) R(-n) --phi1--> I -> 0
//
// with I = (y^p, x^p, sx - ry) in R = k[x, y, U, V].

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kf/detail/fieldmat.hpp"
#include "kf/errors.hpp"
#include "kf/gf.hpp"
#include "kf/poly.hpp"
#include "kf/surfgeom.hpp"

namespace kf::pencil {

using gf::FieldElement;
using gf::SpecPtr;
using poly::BinaryForm;
using poly::MultiPoly;
using surfgeom::AlphaPosition;

struct OmegaResult {
    bool trivial = false;
    int twist = 0;
};

/// Dualizing-sheaf twist np - n - 2; trivial iff n(p-1) = 2, which
/// happens exactly for (p,n) = (3,1) and (2,2).
inline OmegaResult omega_trivial(int p, int n) {
    if (p != 2 && p != 3) throw error("omega_trivial: p must be 2 or 3");
    if (n < 1) throw error("omega_trivial: n must be >= 1");
    int twist = n * p - n - 2;
    return OmegaResult{twist == 0, twist};
}

/// The degree-n section pair defining the pencil. Valid only when r and
/// s have no common projective zero.
struct PencilSpec {
    int p = 0;
    int n = 0;
    BinaryForm r;
    BinaryForm s;

    static PencilSpec make(int p, int n, BinaryForm r, BinaryForm s) {
        if (p != 2 && p != 3) throw error("PencilSpec: p must be 2 or 3");
        if (n < 1) throw error("PencilSpec: n must be >= 1");
        if (r.spec()->p() != p) throw error("PencilSpec: form characteristic does not match p");
        if (*r.spec() != *s.spec()) throw error("PencilSpec: r and s over different fields");
        if (r.degree() != n || s.degree() != n)
            throw error("PencilSpec: forms must have degree n");
        if (!poly::common_zero_free(r, s))
            throw error("PencilSpec: r and s have a common zero");
        return PencilSpec{p, n, std::move(r), std::move(s)};
    }
};

/// Splitting type of the relative Lie algebra: twists (-np, n).
inline std::pair<int, int> lie_splitting(const PencilSpec& spec) {
    return {-spec.n * spec.p, spec.n};
}

/// The position (r(t) : s(t)) of the fiber over t = (t0:t1); never
/// (0:0) because r and s have no common zero.
inline AlphaPosition fiber_position(const PencilSpec& spec, const FieldElement& t0,
                                    const FieldElement& t1) {
    if (t0.is_zero() && t1.is_zero()) throw error("fiber_position: (0:0) is not a point");
    return AlphaPosition(spec.r.eval(t0, t1), spec.s.eval(t0, t1));
}

/// The five points of P^1(F4) embedded into the coefficient field.
inline std::vector<std::pair<FieldElement, FieldElement>> p1_f4_points(const SpecPtr& spec) {
    FieldElement z = gf::zeta(spec);
    FieldElement zero = FieldElement::zero(spec), one = FieldElement::one(spec);
    return {{one, zero}, {zero, one}, {one, one}, {one, z}, {one, z * z}};
}

/// Number of distinct points t of the projective line over the
/// algebraic closure whose fiber position is F4-rational: the sum over
/// b in P^1(F4) of the distinct roots of b1*r - b0*s.
inline int count_sigma1_fibers(const PencilSpec& spec) {
    if (spec.p != 2) throw error("count_sigma1_fibers: defined in characteristic 2");
    if (spec.r.spec()->k() % 2 != 0)
        throw error("count_sigma1_fibers: coefficient field must contain F4");
    int total = 0;
    for (const auto& [b0, b1] : p1_f4_points(spec.r.spec())) {
        BinaryForm h = spec.r.scale(b1) - spec.s.scale(b0);
        total += poly::distinct_projective_roots(h);
    }
    return total;
}

struct WitnessReport {
    int count_a = 0;
    int count_b = 0;
    bool counts_differ = false;
};

/// Compares the F4-rational fiber counts of two pencils. Differing
/// counts witness that the two families are not isomorphic.
inline WitnessReport nonrigidity_witness(const PencilSpec& a, const PencilSpec& b) {
    if (a.p != 2 || b.p != 2 || a.n != 2 || b.n != 2)
        throw error("nonrigidity_witness: both pencils must have p = 2, n = 2");
    WitnessReport w;
    w.count_a = count_sigma1_fibers(a);
    w.count_b = count_sigma1_fibers(b);
    w.counts_differ = (w.count_a != w.count_b);
    return w;
}

/// The resolution data: phi1 (1x3) and phi2 (3x2) over k[x,y,U,V].
class HBComplex {
public:
    static const std::vector<std::string>& ring_vars() {
        static const std::vector<std::string> v{"x", "y", "U", "V"};
        return v;
    }

    /// Build the matrices in the standard pattern from (p, n, r, s).
    static HBComplex make(const PencilSpec& spec) {
        const SpecPtr& F = spec.r.spec();
        const auto& vars = ring_vars();
        const int p = spec.p;
        MultiPoly x = MultiPoly::variable(F, vars, 0);
        MultiPoly y = MultiPoly::variable(F, vars, 1);
        MultiPoly r = form_to_poly(spec.r, 2, 3);
        MultiPoly s = form_to_poly(spec.s, 2, 3);
        MultiPoly ry_sx = r * y - s * x;
        HBComplex c(spec);
        c.phi1_ = {y.pow(p), x.pow(p), s * x - r * y};
        c.phi2_ = {{MultiPoly(F, vars), r.pow(p)},
                   {ry_sx, -s.pow(p)},
                   {x.pow(p), ry_sx.pow(p - 1)}};
        return c;
    }

    /// Build with explicit matrices (for tamper checks).
    static HBComplex with_matrices(const PencilSpec& spec, std::array<MultiPoly, 3> phi1,
                                   std::vector<std::array<MultiPoly, 2>> phi2) {
        if (phi2.size() != 3) throw error("HBComplex: phi2 must have three rows");
        HBComplex c(spec);
        c.phi1_ = std::move(phi1);
        c.phi2_ = std::move(phi2);
        return c;
    }

    const PencilSpec& spec() const { return spec_; }
    const std::array<MultiPoly, 3>& phi1() const { return phi1_; }
    const std::vector<std::array<MultiPoly, 2>>& phi2() const { return phi2_; }

    /// A binary form as an element of k[x,y,U,V] in variables (ui, vi).
    static MultiPoly form_to_poly(const BinaryForm& f, size_t ui, size_t vi) {
        MultiPoly out(f.spec(), ring_vars());
        for (int i = 0; i <= f.degree(); ++i) {
            poly::Exponents e(4, 0);
            e[ui] = f.degree() - i;
            e[vi] = i;
            out.add_term(std::move(e), f.coeff(static_cast<size_t>(i)));
        }
        return out;
    }

private:
    explicit HBComplex(PencilSpec spec)
        : spec_(std::move(spec)),
          phi1_{MultiPoly(spec_.r.spec(), ring_vars()), MultiPoly(spec_.r.spec(), ring_vars()),
                MultiPoly(spec_.r.spec(), ring_vars())} {}

    PencilSpec spec_;
    std::array<MultiPoly, 3> phi1_;
    std::vector<std::array<MultiPoly, 2>> phi2_;
};

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string residual; // nonzero residual polynomial when failed
};

struct HbReport {
    std::vector<IdentityCheck> checks;
    bool ok = true;
};

/// Symbolic verification: (a) phi1 * phi2 = 0; (b) the signed 2x2
/// minors of phi2 (sign (-1)^i for the minor dropping row i) are the
/// entries of -r^p * phi1; (c) the characteristic-p identity
/// (sx - ry)(ry - sx)^(p-1) = -(ry - sx)^p used in (a).
inline HbReport hb_verify(const HBComplex& c) {
    const int p = c.spec().p;
    const SpecPtr& F = c.spec().r.spec();
    const auto& vars = HBComplex::ring_vars();
    MultiPoly x = MultiPoly::variable(F, vars, 0);
    MultiPoly y = MultiPoly::variable(F, vars, 1);
    MultiPoly r = HBComplex::form_to_poly(c.spec().r, 2, 3);
    MultiPoly s = HBComplex::form_to_poly(c.spec().s, 2, 3);

    HbReport rep;
    auto record = [&rep](const std::string& name, const MultiPoly& residual) {
        IdentityCheck ch{name, residual.is_zero(),
                         residual.is_zero() ? "" : residual.to_string()};
        rep.ok = rep.ok && ch.ok;
        rep.checks.push_back(std::move(ch));
    };

    const auto& f1 = c.phi1();
    const auto& f2 = c.phi2();
    for (int col = 0; col < 2; ++col) {
        MultiPoly acc(F, vars);
        for (int i = 0; i < 3; ++i) acc = acc + f1[static_cast<size_t>(i)] * f2[static_cast<size_t>(i)][static_cast<size_t>(col)];
        record("phi1*phi2 column " + std::to_string(col + 1), acc);
    }

    MultiPoly rp = r.pow(p);
    for (int i = 1; i <= 3; ++i) {
        int r1 = (i == 1) ? 1 : 0;         // rows kept when dropping row i
        int r2 = (i == 3) ? 1 : 2;
        MultiPoly minor = f2[static_cast<size_t>(r1)][0] * f2[static_cast<size_t>(r2)][1] -
                          f2[static_cast<size_t>(r1)][1] * f2[static_cast<size_t>(r2)][0];
        if (i % 2 == 1) minor = -minor;   // sign (-1)^i
        record("minor row " + std::to_string(i) + " vs -r^p*phi1",
               minor + rp * f1[static_cast<size_t>(i - 1)]);
    }

    MultiPoly ry_sx = r * y - s * x;
    record("(sx-ry)(ry-sx)^(p-1) + (ry-sx)^p",
           (s * x - r * y) * ry_sx.pow(p - 1) + ry_sx.pow(p));
    return rep;
}

namespace detail {

using kf::detail::FMatrix;

struct Bideg {
    int xy = 0;
    int uv = 0;
};
inline Bideg operator+(Bideg a, Bideg b) { return {a.xy + b.xy, a.uv + b.uv}; }

// Monomials x^a y^(xy-a) U^c V^(uv-c) of a fixed bidegree, in a fixed
// deterministic order. Empty when a component is negative.
inline std::vector<poly::Exponents> monomials(Bideg d) {
    std::vector<poly::Exponents> out;
    if (d.xy < 0 || d.uv < 0) return out;
    for (int a = d.xy; a >= 0; --a)
        for (int c = d.uv; c >= 0; --c) out.push_back({a, d.xy - a, c, d.uv - c});
    return out;
}

inline std::map<poly::Exponents, size_t> index_of(const std::vector<poly::Exponents>& mons) {
    std::map<poly::Exponents, size_t> idx;
    for (size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
    return idx;
}

// Coordinates of m*g in the target monomial basis.
inline std::vector<FieldElement> mult_column(const poly::Exponents& m, const MultiPoly& g,
                                             const std::map<poly::Exponents, size_t>& tindex,
                                             size_t tdim, const SpecPtr& F) {
    std::vector<FieldElement> col(tdim, FieldElement::zero(F));
    for (const auto& [e, coeff] : g.terms()) {
        poly::Exponents t(4);
        for (size_t i = 0; i < 4; ++i) t[i] = e[i] + m[i];
        auto it = tindex.find(t);
        if (it == tindex.end()) throw error("mult_column: product leaves the graded piece");
        col[it->second] = col[it->second] + coeff;
    }
    return col;
}

inline size_t rank_of_columns(const std::vector<std::vector<FieldElement>>& cols, size_t dim,
                              const SpecPtr& F) {
    if (cols.empty() || dim == 0) return 0;
    FMatrix m(dim, std::vector<FieldElement>(cols.size(), FieldElement::zero(F)));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m[i][j] = cols[j][i];
    return kf::detail::fmat_rank(std::move(m));
}

} // namespace detail

struct PieceResult {
    int dxy = 0, duv = 0;
    size_t dim_f2 = 0, dim_f1 = 0, dim_r = 0;
    size_t rank_phi1 = 0, rank_phi2 = 0;
    bool injective = false; // rank(phi2) = dim F2 piece
    bool exact = false;     // dim ker(phi1) = rank(phi2)
};

struct ReducedDegreeResult {
    int degree = 0;
    size_t kernel_dim = 0, expected_kernel_dim = 0;
    size_t quotient_dim = 0, expected_quotient_dim = 0;
    bool generators_in_kernel = false; // multiples of (r^p, -s^p, 0)
    bool surjective = false;
    bool ok = false;
};

struct ExactnessReport {
    std::vector<PieceResult> pieces;
    std::vector<ReducedDegreeResult> reduced;
    std::pair<int, int> cokernel_twists{0, 0}; // (np, -n), dual to the Lie splitting
    bool ok = true;
};

/// Checks, for every bidegree piece of total degree <= max_degree, that
/// the complex is exact: phi2 injective and dim ker(phi1) = rank(phi2),
/// by exact linear algebra on monomial bases. Also verifies the
/// complex reduced modulo (x,y): the kernel of the induced map to
/// I/(x,y)I is spanned degreewise by the multiples of (r^p, -s^p, 0),
/// and the reduced cokernel has the dimensions of twists (np, -n).
inline ExactnessReport hb_graded_exactness(const HBComplex& c, int max_degree) {
    if (max_degree < 0 || max_degree > 12)
        throw error("hb_graded_exactness: max_degree must be in 0..12");
    const int p = c.spec().p, n = c.spec().n, np = n * p;
    const SpecPtr& F = c.spec().r.spec();
    using detail::Bideg;

    const std::array<Bideg, 3> a{{{-p, 0}, {-p, 0}, {-1, -n}}};
    const std::array<Bideg, 2> b{{{-p - 1, -n}, {-p, -np}}};

    ExactnessReport rep;
    for (int dxy = 0; dxy <= max_degree; ++dxy) {
        for (int duv = 0; dxy + duv <= max_degree; ++duv) {
            Bideg d{dxy, duv};
            auto tmons = detail::monomials(d);
            auto tidx = detail::index_of(tmons);

            std::array<std::vector<poly::Exponents>, 3> f1mons;
            std::array<std::map<poly::Exponents, size_t>, 3> f1idx;
            size_t dim_f1 = 0;
            for (size_t i = 0; i < 3; ++i) {
                f1mons[i] = detail::monomials(d + a[i]);
                f1idx[i] = detail::index_of(f1mons[i]);
                dim_f1 += f1mons[i].size();
            }

            // phi1 piece: F1 -> R_d, block i multiplies by phi1[i].
            std::vector<std::vector<FieldElement>> cols1;
            for (size_t i = 0; i < 3; ++i)
                for (const auto& m : f1mons[i])
                    cols1.push_back(detail::mult_column(m, c.phi1()[i], tidx, tmons.size(), F));
            size_t rank1 = detail::rank_of_columns(cols1, tmons.size(), F);

            // phi2 piece: F2 -> F1, stacking the three row blocks.
            size_t dim_f2 = 0;
            std::vector<std::vector<FieldElement>> cols2;
            for (size_t j = 0; j < 2; ++j) {
                auto smons = detail::monomials(d + b[j]);
                dim_f2 += smons.size();
                for (const auto& m : smons) {
                    std::vector<FieldElement> col;
                    col.reserve(dim_f1);
                    for (size_t i = 0; i < 3; ++i) {
                        std::vector<FieldElement> part =
                            c.phi2()[i][j].is_zero()
                                ? std::vector<FieldElement>(f1mons[i].size(), FieldElement::zero(F))
                                : detail::mult_column(m, c.phi2()[i][j], f1idx[i], f1mons[i].size(), F);
                        col.insert(col.end(), part.begin(), part.end());
                    }
                    cols2.push_back(std::move(col));
                }
            }
            size_t rank2 = detail::rank_of_columns(cols2, dim_f1, F);

            PieceResult pr;
            pr.dxy = dxy;
            pr.duv = duv;
            pr.dim_f2 = dim_f2;
            pr.dim_f1 = dim_f1;
            pr.dim_r = tmons.size();
            pr.rank_phi1 = rank1;
            pr.rank_phi2 = rank2;
            pr.injective = (rank2 == dim_f2);
            pr.exact = (dim_f1 - rank1 == rank2);
            rep.ok = rep.ok && pr.injective && pr.exact;
            rep.pieces.push_back(pr);
        }
    }

    // Reduced complex modulo (x,y), graded by U,V-degree. The image of
    // (v1, v2, v3) is v1 y^p + v2 x^p + v3 (sx - ry), landing in the
    // x,y-degree slices p and 1 of I/(x,y)I.
    const auto& vars = HBComplex::ring_vars();
    MultiPoly xv = MultiPoly::variable(F, vars, 0);
    MultiPoly yv = MultiPoly::variable(F, vars, 1);
    MultiPoly rpoly = HBComplex::form_to_poly(c.spec().r, 2, 3);
    MultiPoly spoly = HBComplex::form_to_poly(c.spec().s, 2, 3);
    const std::array<MultiPoly, 3> gens{yv.pow(p), xv.pow(p), spoly * xv - rpoly * yv};
    const std::array<Bideg, 3> gdeg{{{p, 0}, {p, 0}, {1, n}}};
    MultiPoly rp = rpoly.pow(p), sp = spoly.pow(p);

    for (int deg = 0; deg <= max_degree; ++deg) {
        // Slice bases and ideal spans at x,y-degrees 1..p.
        std::array<int, 2> slices{p, 1};
        std::vector<std::vector<poly::Exponents>> smons(2);
        std::vector<std::map<poly::Exponents, size_t>> sidx(2);
        std::vector<std::vector<std::vector<FieldElement>>> wcols(2); // (x,y)*I spans
        size_t target_dim = 0;
        std::array<size_t, 2> offset{0, 0};
        std::array<size_t, 2> ideal_rank{0, 0}, xy_ideal_rank{0, 0};
        for (size_t si = 0; si < 2; ++si) {
            offset[si] = target_dim;
            int e = slices[si];
            smons[si] = detail::monomials({e, deg});
            sidx[si] = detail::index_of(smons[si]);
            target_dim += smons[si].size();

            std::vector<std::vector<FieldElement>> icols;
            for (size_t gi = 0; gi < 3; ++gi)
                for (const auto& m : detail::monomials({e - gdeg[gi].xy, deg - gdeg[gi].uv}))
                    icols.push_back(
                        detail::mult_column(m, gens[gi], sidx[si], smons[si].size(), F));
            ideal_rank[si] = detail::rank_of_columns(icols, smons[si].size(), F);

            // (x,y) * I at this slice: x and y times the spanning set of
            // the ideal one x,y-degree lower.
            for (size_t gi = 0; gi < 3; ++gi)
                for (const auto& m :
                     detail::monomials({e - 1 - gdeg[gi].xy, deg - gdeg[gi].uv}))
                    for (const MultiPoly* mult : {&xv, &yv})
                        wcols[si].push_back(detail::mult_column(
                            m, *mult * gens[gi], sidx[si], smons[si].size(), F));
            xy_ideal_rank[si] = detail::rank_of_columns(wcols[si], smons[si].size(), F);
        }

        // Source blocks: v1, v2 of U,V-degree deg; v3 of degree deg - n.
        auto v12mons = detail::monomials({0, deg});
        auto v3mons = detail::monomials({0, deg - n});
        size_t src_dim = 2 * v12mons.size() + v3mons.size();

        auto image_of = [&](size_t block, const poly::Exponents& m) {
            std::vector<FieldElement> img(target_dim, FieldElement::zero(F));
            const MultiPoly& g = gens[block];
            size_t si = (block == 2) ? 1 : 0; // v3 lands in the x,y-degree-1 slice
            std::vector<FieldElement> part =
                detail::mult_column(m, g, sidx[si], smons[si].size(), F);
            for (size_t i = 0; i < part.size(); ++i) img[offset[si] + i] = part[i];
            return img;
        };

        std::vector<std::vector<FieldElement>> mcols;
        for (size_t block = 0; block < 3; ++block)
            for (const auto& m : (block == 2 ? v3mons : v12mons))
                mcols.push_back(image_of(block, m));

        std::vector<std::vector<FieldElement>> wall;
        for (size_t si = 0; si < 2; ++si)
            for (const auto& wc : wcols[si]) {
                std::vector<FieldElement> full(target_dim, FieldElement::zero(F));
                for (size_t i = 0; i < wc.size(); ++i) full[offset[si] + i] = wc[i];
                wall.push_back(std::move(full));
            }
        size_t rank_w = detail::rank_of_columns(wall, target_dim, F);
        std::vector<std::vector<FieldElement>> mw = mcols;
        mw.insert(mw.end(), wall.begin(), wall.end());
        size_t rank_mw = detail::rank_of_columns(mw, target_dim, F);

        ReducedDegreeResult rr;
        rr.degree = deg;
        rr.kernel_dim = src_dim - rank_mw + rank_w;
        rr.expected_kernel_dim = static_cast<size_t>(std::max(deg - np + 1, 0));

        // Multiples of (r^p, -s^p, 0) must lie in the kernel.
        rr.generators_in_kernel = true;
        for (const auto& m : detail::monomials({0, deg - np})) {
            MultiPoly img_poly = (MultiPoly::monomial(F, vars, m, FieldElement::one(F)) *
                                  (rp * gens[0] - sp * gens[1]));
            std::vector<FieldElement> img =
                detail::mult_column({0, 0, 0, 0}, img_poly, sidx[0], smons[0].size(), F);
            std::vector<FieldElement> full(target_dim, FieldElement::zero(F));
            for (size_t i = 0; i < img.size(); ++i) full[offset[0] + i] = img[i];
            auto wtest = wall;
            wtest.push_back(std::move(full));
            if (detail::rank_of_columns(wtest, target_dim, F) != rank_w)
                rr.generators_in_kernel = false;
        }

        rr.quotient_dim = (ideal_rank[0] - xy_ideal_rank[0]) + (ideal_rank[1] - xy_ideal_rank[1]);
        size_t expected_q = static_cast<size_t>(2 * (deg + 1) + std::max(deg - n + 1, 0) -
                                                std::max(deg - np + 1, 0));
        rr.expected_quotient_dim = expected_q;
        rr.surjective = (rank_mw - rank_w == rr.quotient_dim);

        bool twist_dims_ok = true;
        if (deg >= np - 1) {
            size_t sheaf_dims = static_cast<size_t>((deg + np + 1) + std::max(deg - n + 1, 0));
            twist_dims_ok = (rr.quotient_dim == sheaf_dims);
        }
        rr.ok = (rr.kernel_dim == rr.expected_kernel_dim) && rr.generators_in_kernel &&
                (rr.quotient_dim == rr.expected_quotient_dim) && rr.surjective && twist_dims_ok;
        rep.ok = rep.ok && rr.ok;
        rep.reduced.push_back(rr);
    }

    rep.cokernel_twists = {np, -n};
    return rep;
}

} // namespace kf::pencil
