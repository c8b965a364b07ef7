#pragma once

// Truncated multivariate power series over GF(p^k) and the
// linearization of finite-order automorphisms: given f of order m
// prime to p whose linear part has zeta-power eigenvalues, produce a
// change of parameters conjugating f into the exact diagonal form
// u_i -> zeta^(n_i) u_i modulo the truncation order. Also the
// weight-enumeration check that the (2,1)-weight order-3 invariants
// are generated by x^3, xy, y^3.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kf/detail/fieldmat.hpp"
#include "kf/errors.hpp"
#include "kf/gf.hpp"
#include "kf/poly.hpp"

namespace kf::series {

using gf::FieldElement;
using gf::SpecPtr;
using poly::Exponents;
using poly::GradedLex;

/// Sparse truncated power series: terms of total degree < order.
class TruncatedSeries {
public:
    using TermMap = std::map<Exponents, FieldElement, GradedLex>;

    TruncatedSeries(SpecPtr spec, int nvars, int order)
        : spec_(std::move(spec)), d_(nvars), order_(order) {
        if (d_ < 1) throw error("TruncatedSeries: need at least one variable");
        if (order_ < 1) throw error("TruncatedSeries: order must be >= 1");
    }

    static TruncatedSeries variable(const SpecPtr& spec, int nvars, int order, int i) {
        TruncatedSeries s(spec, nvars, order);
        Exponents e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i)] = 1;
        s.add_term(std::move(e), FieldElement::one(spec));
        return s;
    }

    const SpecPtr& spec() const { return spec_; }
    int nvars() const { return d_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FieldElement coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldElement::zero(spec_) : it->second;
    }

    void add_term(Exponents e, const FieldElement& c) {
        if (e.size() != static_cast<size_t>(d_)) throw error("TruncatedSeries: exponent arity mismatch");
        int deg = 0;
        for (int x : e) deg += x;
        if (deg >= order_ || c.is_zero()) return; // truncate silently
        auto [it, fresh] = terms_.emplace(std::move(e), c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        check_compatible(o);
        TruncatedSeries r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(spec_, d_, order_);
        for (const auto& [e, c] : terms_) r.add_term(e, -c);
        return r;
    }

    TruncatedSeries operator-(const TruncatedSeries& o) const { return *this + (-o); }

    TruncatedSeries operator*(const TruncatedSeries& o) const {
        check_compatible(o);
        TruncatedSeries r(spec_, d_, order_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb); // add_term truncates
            }
        return r;
    }

    TruncatedSeries scale(const FieldElement& c) const {
        TruncatedSeries r(spec_, d_, order_);
        for (const auto& [e, cc] : terms_) r.add_term(e, cc * c);
        return r;
    }

    TruncatedSeries pow(int k) const {
        TruncatedSeries acc(spec_, d_, order_);
        acc.add_term(Exponents(static_cast<size_t>(d_), 0), FieldElement::one(spec_));
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    /// Substitute the component series (all with zero constant term)
    /// for the variables.
    TruncatedSeries substitute(const std::vector<TruncatedSeries>& comps) const {
        if (comps.size() != static_cast<size_t>(d_))
            throw error("TruncatedSeries::substitute: wrong number of components");
        TruncatedSeries r(spec_, d_, order_);
        for (const auto& [e, c] : terms_) {
            TruncatedSeries t(spec_, d_, order_);
            t.add_term(Exponents(static_cast<size_t>(d_), 0), c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * comps[i].pow(e[i]);
            r = r + t;
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.to_string() + ":";
            for (size_t i = 0; i < e.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(e[i]);
            }
        }
        return s;
    }

private:
    void check_compatible(const TruncatedSeries& o) const {
        if (*spec_ != *o.spec_ || d_ != o.d_ || order_ != o.order_)
            throw error("TruncatedSeries: mismatched spec, arity, or order");
    }

    SpecPtr spec_;
    int d_;
    int order_;
    TermMap terms_;
};

/// A formal automorphism: d component series with zero constant term
/// and invertible linear part.
class SeriesAutomorphism {
public:
    explicit SeriesAutomorphism(std::vector<TruncatedSeries> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw error("SeriesAutomorphism: no components");
        d_ = static_cast<int>(comps_.size());
        for (const auto& c : comps_) {
            if (c.nvars() != d_) throw error("SeriesAutomorphism: component arity mismatch");
            if (!c.coeff(Exponents(static_cast<size_t>(d_), 0)).is_zero())
                throw error("SeriesAutomorphism: components must have zero constant term");
        }
        kf::detail::fmat_inverse(linear_part()); // throws when not invertible
    }

    static SeriesAutomorphism identity(const SpecPtr& spec, int d, int order) {
        std::vector<TruncatedSeries> comps;
        for (int i = 0; i < d; ++i) comps.push_back(TruncatedSeries::variable(spec, d, order, i));
        return SeriesAutomorphism(std::move(comps));
    }

    /// The linear automorphism u -> M u.
    static SeriesAutomorphism linear(const SpecPtr& spec, const kf::detail::FMatrix& m, int order) {
        int d = static_cast<int>(m.size());
        std::vector<TruncatedSeries> comps;
        for (int i = 0; i < d; ++i) {
            TruncatedSeries s(spec, d, order);
            for (int j = 0; j < d; ++j) {
                Exponents e(static_cast<size_t>(d), 0);
                e[static_cast<size_t>(j)] = 1;
                s.add_term(std::move(e), m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            }
            comps.push_back(std::move(s));
        }
        return SeriesAutomorphism(std::move(comps));
    }

    int nvars() const { return d_; }
    int order() const { return comps_[0].order(); }
    const SpecPtr& spec() const { return comps_[0].spec(); }
    const std::vector<TruncatedSeries>& components() const { return comps_; }
    const TruncatedSeries& component(int i) const { return comps_[static_cast<size_t>(i)]; }

    kf::detail::FMatrix linear_part() const {
        kf::detail::FMatrix m =
            kf::detail::fmat_zero(spec(), static_cast<size_t>(d_), static_cast<size_t>(d_));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                Exponents e(static_cast<size_t>(d_), 0);
                e[static_cast<size_t>(j)] = 1;
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    comps_[static_cast<size_t>(i)].coeff(e);
            }
        return m;
    }

    bool operator==(const SeriesAutomorphism& o) const {
        if (d_ != o.d_) return false;
        for (int i = 0; i < d_; ++i)
            if (comps_[static_cast<size_t>(i)].terms() != o.comps_[static_cast<size_t>(i)].terms())
                return false;
        return true;
    }

    /// True when every component is c_i * u_i.
    bool is_diagonal() const {
        for (int i = 0; i < d_; ++i)
            for (const auto& [e, c] : comps_[static_cast<size_t>(i)].terms()) {
                int deg = 0;
                for (int x : e) deg += x;
                if (deg != 1 || e[static_cast<size_t>(i)] != 1) return false;
            }
        return true;
    }

private:
    std::vector<TruncatedSeries> comps_;
    int d_ = 0;
};

/// Substitution composition (f o g)(u) = f(g(u)), truncated.
inline SeriesAutomorphism compose(const SeriesAutomorphism& f, const SeriesAutomorphism& g) {
    std::vector<TruncatedSeries> comps;
    for (int i = 0; i < f.nvars(); ++i) comps.push_back(f.component(i).substitute(g.components()));
    return SeriesAutomorphism(std::move(comps));
}

/// Compositional inverse modulo the truncation order.
inline SeriesAutomorphism inverse(const SeriesAutomorphism& f) {
    const SpecPtr& spec = f.spec();
    int d = f.nvars(), order = f.order();
    kf::detail::FMatrix linv = kf::detail::fmat_inverse(f.linear_part());
    SeriesAutomorphism lin_inv = SeriesAutomorphism::linear(spec, linv, order);
    SeriesAutomorphism id = SeriesAutomorphism::identity(spec, d, order);

    // Split f = L + F and iterate g <- L^{-1} (id - F o g); each pass
    // fixes one more total degree.
    SeriesAutomorphism lin = SeriesAutomorphism::linear(spec, f.linear_part(), order);
    std::vector<TruncatedSeries> tail;
    for (int i = 0; i < d; ++i) tail.push_back(f.component(i) - lin.component(i));

    SeriesAutomorphism g = lin_inv;
    for (int pass = 0; pass < order; ++pass) {
        std::vector<TruncatedSeries> next;
        for (int i = 0; i < d; ++i) {
            TruncatedSeries t = id.component(i) - tail[static_cast<size_t>(i)].substitute(g.components());
            next.push_back(std::move(t));
        }
        SeriesAutomorphism h(std::move(next));
        g = compose(lin_inv, h);
    }
    if (!(compose(f, g) == SeriesAutomorphism::identity(spec, d, order)) ||
        !(compose(g, f) == SeriesAutomorphism::identity(spec, d, order)))
        throw verification_error("inverse: composition with the result is not the identity");
    return g;
}

/// f composed with itself k times.
inline SeriesAutomorphism iterate(const SeriesAutomorphism& f, int k) {
    SeriesAutomorphism acc = SeriesAutomorphism::identity(f.spec(), f.nvars(), f.order());
    for (int i = 0; i < k; ++i) acc = compose(acc, f);
    return acc;
}

struct LinearizeResult {
    SeriesAutomorphism change;
    std::vector<int> weights; // n_i with conjugate(u_i) = zeta^(n_i) u_i
};

/// Conjugates f into exact diagonal form modulo the truncation order.
/// Requires f^m = id mod order, gcd(m, p) = 1, and zeta a primitive
/// m-th root of unity. The linear part is diagonalized first; then for
/// each total degree 2 <= delta < order, each off-diagonal monomial
/// u^l in coordinate i with weight e = sum l_j n_j is removed by the
/// substitution u_i <- u_i + x u^l with x = y / (zeta^(n_i) - zeta^e).
/// When e = n_i (mod m) the coefficient y is forced to vanish by
/// f^m = id; a nonzero value is reported as inconsistent input.
inline LinearizeResult linearize(const SeriesAutomorphism& f, int m, const FieldElement& zeta,
                                 int order) {
    const SpecPtr& spec = f.spec();
    const int d = f.nvars();
    if (order != f.order()) throw error("linearize: order must match the automorphism truncation");
    if (m < 1) throw error("linearize: order m must be >= 1");
    if (m % spec->p() == 0) throw error("linearize: m must be prime to the characteristic");
    if (zeta.mult_order() != m)
        throw error("linearize: zeta is not a primitive m-th root of unity");
    if (!(iterate(f, m) == SeriesAutomorphism::identity(spec, d, order)))
        throw error("linearize: f does not have order m modulo the truncation");

    // Diagonalize the linear part: collect eigenvectors for each power
    // of zeta, keyed to their pivot coordinate so an already-diagonal
    // linear part yields the identity change.
    kf::detail::FMatrix L = f.linear_part();
    std::vector<std::pair<int, std::vector<FieldElement>>> pairs; // (weight, eigenvector)
    for (int w = 0; w < m; ++w) {
        FieldElement lam = zeta.pow(w);
        kf::detail::FMatrix shifted = L;
        for (int i = 0; i < d; ++i)
            shifted[static_cast<size_t>(i)][static_cast<size_t>(i)] =
                shifted[static_cast<size_t>(i)][static_cast<size_t>(i)] - lam;
        for (auto& v : kf::detail::fmat_kernel(std::move(shifted), spec, static_cast<size_t>(d)))
            pairs.emplace_back(w, std::move(v));
        if (static_cast<int>(pairs.size()) == d) break;
    }
    if (static_cast<int>(pairs.size()) != d)
        throw error("linearize: linear part has an eigenvalue that is not a power of zeta");
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        auto pivot = [](const std::vector<FieldElement>& v) {
            for (size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) return i;
            return v.size();
        };
        return pivot(a.second) < pivot(b.second);
    });

    std::vector<int> weights;
    kf::detail::FMatrix P = kf::detail::fmat_zero(spec, static_cast<size_t>(d), static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        weights.push_back(pairs[static_cast<size_t>(j)].first);
        for (int i = 0; i < d; ++i)
            P[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                pairs[static_cast<size_t>(j)].second[static_cast<size_t>(i)];
    }
    SeriesAutomorphism change =
        SeriesAutomorphism::linear(spec, kf::detail::fmat_inverse(P), order);
    SeriesAutomorphism g = compose(change, compose(f, inverse(change)));

    // Remove off-diagonal monomials degree by degree; substitutions at
    // degree delta do not disturb lower degrees.
    for (int delta = 2; delta < order; ++delta) {
        for (int i = 0; i < d; ++i) {
            for (;;) {
                // Fetch the first offending degree-delta monomial in
                // graded-lex order; the term map iterates in that order.
                std::optional<std::pair<Exponents, FieldElement>> offending;
                for (const auto& [e, cc] : g.component(i).terms()) {
                    int deg = 0;
                    for (int v : e) deg += v;
                    if (deg != delta) continue;
                    offending = {e, cc};
                    break;
                }
                if (!offending) break;
                const Exponents& l = offending->first;
                const FieldElement y = offending->second;
                int e_weight = 0;
                for (int j = 0; j < d; ++j) e_weight += l[static_cast<size_t>(j)] * weights[static_cast<size_t>(j)];
                if (((e_weight - weights[static_cast<size_t>(i)]) % m + m) % m == 0)
                    throw verification_error(
                        "linearize: obstructed coefficient " + y.to_string() +
                        " at a resonant monomial; input is not an order-m automorphism");
                FieldElement x =
                    y / (zeta.pow(weights[static_cast<size_t>(i)]) - zeta.pow(e_weight % m));
                SeriesAutomorphism h = SeriesAutomorphism::identity(spec, d, order);
                std::vector<TruncatedSeries> comps = h.components();
                comps[static_cast<size_t>(i)].add_term(l, x);
                h = SeriesAutomorphism(std::move(comps));
                g = compose(h, compose(g, inverse(h)));
                change = compose(h, change);
            }
        }
    }

    if (!g.is_diagonal())
        throw verification_error("linearize: conjugate is not diagonal after elimination");
    for (int i = 0; i < d; ++i) {
        Exponents e(static_cast<size_t>(d), 0);
        e[static_cast<size_t>(i)] = 1;
        if (g.component(i).coeff(e) != zeta.pow(weights[static_cast<size_t>(i)]))
            throw verification_error("linearize: diagonal entry is not the expected zeta power");
    }
    SeriesAutomorphism check = compose(change, compose(f, inverse(change)));
    if (!(check == g))
        throw verification_error("linearize: accumulated change does not reproduce the conjugate");
    return LinearizeResult{std::move(change), std::move(weights)};
}

/// Exponent pairs (a, b), a + b <= max_degree, of the monomials fixed
/// by the diagonal weight-(w1, w2) action of order m. For the weights
/// (2,1) with m = 3 every such monomial is checked to factor through
/// x^3, xy, y^3 by greedy division.
inline std::vector<std::pair<int, int>> invariant_monomials(int w1, int w2, int m, int max_degree) {
    if (max_degree < 0 || max_degree > 12) throw error("invariant_monomials: degree must be in 0..12");
    if (m < 1) throw error("invariant_monomials: m must be >= 1");
    std::vector<std::pair<int, int>> out;
    for (int total = 1; total <= max_degree; ++total)
        for (int a = total; a >= 0; --a) {
            int b = total - a;
            if (((w1 * a + w2 * b) % m + m) % m != 0) continue;
            out.emplace_back(a, b);
        }
    const bool a2_case = (m == 3) && ((w1 % 3 + 3) % 3 == 2) && ((w2 % 3 + 3) % 3 == 1);
    if (a2_case) {
        for (auto [a, b] : out) {
            int aa = a, bb = b;
            while (aa >= 3) aa -= 3;          // divide by x^3
            while (bb >= 3) bb -= 3;          // divide by y^3
            int t = std::min(aa, bb);
            aa -= t;                          // divide by xy
            bb -= t;
            if (aa != 0 || bb != 0)
                throw verification_error("invariant_monomials: invariant does not factor through "
                                         "x^3, xy, y^3");
        }
    }
    return out;
}

} // namespace kf::series
