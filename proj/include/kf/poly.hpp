#pragma once

// Sparse multivariate polynomials, dense univariate polynomials, and
// homogeneous binary forms over GF(p^k). Includes the characteristic-p
// squarefree machinery behind distinct projective root counting.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kf/errors.hpp"
#include "kf/gf.hpp"

namespace kf::poly {

using gf::FieldElement;
using gf::SpecPtr;

using Exponents = std::vector<int>;

/// Graded-lexicographic term order: total degree first, then lex on the
/// exponent vector. Keeps serialization canonical.
struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse polynomial in a fixed ordered variable set. Zero coefficients
/// are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, FieldElement, GradedLex>;

    MultiPoly(SpecPtr spec, std::vector<std::string> vars)
        : spec_(std::move(spec)), vars_(std::move(vars)) {}

    static MultiPoly constant(const SpecPtr& spec, const std::vector<std::string>& vars,
                              const FieldElement& c) {
        MultiPoly f(spec, vars);
        f.add_term(Exponents(vars.size(), 0), c);
        return f;
    }

    static MultiPoly monomial(const SpecPtr& spec, const std::vector<std::string>& vars,
                              Exponents exps, const FieldElement& c) {
        MultiPoly f(spec, vars);
        f.add_term(std::move(exps), c);
        return f;
    }

    /// The single variable vars[i].
    static MultiPoly variable(const SpecPtr& spec, const std::vector<std::string>& vars, size_t i) {
        Exponents e(vars.size(), 0);
        e[i] = 1;
        return monomial(spec, vars, std::move(e), FieldElement::one(spec));
    }

    const SpecPtr& spec() const { return spec_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }

    FieldElement coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldElement::zero(spec_) : it->second;
    }

    void add_term(Exponents e, const FieldElement& c) {
        if (e.size() != vars_.size()) throw error("MultiPoly: exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(std::move(e), c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_compatible(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(spec_, vars_);
        for (const auto& [e, c] : terms_) r.add_term(e, -c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        check_compatible(o);
        MultiPoly r(spec_, vars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    MultiPoly scale(const FieldElement& c) const {
        MultiPoly r(spec_, vars_);
        for (const auto& [e, cc] : terms_) r.add_term(e, cc * c);
        return r;
    }

    MultiPoly pow(int n) const {
        if (n < 0) throw error("MultiPoly::pow: negative exponent");
        MultiPoly acc = constant(spec_, vars_, FieldElement::one(spec_));
        for (int i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    /// Evaluate at a full point, one value per variable.
    FieldElement eval(const std::vector<FieldElement>& point) const {
        if (point.size() != vars_.size()) throw error("MultiPoly::eval: wrong point arity");
        FieldElement acc = FieldElement::zero(spec_);
        for (const auto& [e, c] : terms_) {
            FieldElement t = c;
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * point[i].pow(e[i]);
            acc = acc + t;
        }
        return acc;
    }

    /// Substitute a polynomial for variable index i.
    MultiPoly substitute(size_t i, const MultiPoly& g) const {
        check_compatible(g);
        MultiPoly r(spec_, vars_);
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            int n = rest[i];
            rest[i] = 0;
            MultiPoly t = monomial(spec_, vars_, rest, c) * g.pow(n);
            r = r + t;
        }
        return r;
    }

    /// Partial derivative with respect to variable index i.
    MultiPoly derivative(size_t i) const {
        MultiPoly r(spec_, vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            FieldElement nc = c * FieldElement::from_int(spec_, e[i]);
            if (nc.is_zero()) continue;
            Exponents ne = e;
            --ne[i];
            r.add_term(std::move(ne), nc);
        }
        return r;
    }

    /// True if only vars[i] occurs (constants count as univariate).
    bool is_univariate_in(size_t i) const {
        for (const auto& [e, c] : terms_)
            for (size_t j = 0; j < e.size(); ++j)
                if (j != i && e[j] != 0) return false;
        return true;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c.to_string();
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                os << "*" << vars_[i];
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    void check_compatible(const MultiPoly& o) const {
        if (*spec_ != *o.spec_ || vars_ != o.vars_)
            throw error("MultiPoly: mismatched spec or variables");
    }

    SpecPtr spec_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Dense univariate polynomial, little-endian coefficients, trimmed.
class UniPoly {
public:
    explicit UniPoly(SpecPtr spec, std::vector<FieldElement> c = {})
        : spec_(std::move(spec)), c_(std::move(c)) {
        trim();
    }

    static UniPoly zero(const SpecPtr& spec) { return UniPoly(spec); }
    static UniPoly constant(const SpecPtr& spec, const FieldElement& a) { return UniPoly(spec, {a}); }

    const SpecPtr& spec() const { return spec_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    FieldElement coeff(size_t i) const {
        return i < c_.size() ? c_[i] : FieldElement::zero(spec_);
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<FieldElement> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
        return UniPoly(spec_, std::move(r));
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<FieldElement> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) r.push_back(coeff(i) - o.coeff(i));
        return UniPoly(spec_, std::move(r));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return zero(spec_);
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement::zero(spec_));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return UniPoly(spec_, std::move(r));
    }

    UniPoly scale(const FieldElement& a) const {
        std::vector<FieldElement> r = c_;
        for (auto& x : r) x = x * a;
        return UniPoly(spec_, std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scale(c_.back().inv());
    }

    /// Quotient and remainder by a nonzero divisor.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw error("UniPoly::divmod: division by zero polynomial");
        UniPoly rem = *this;
        if (rem.degree() < d.degree()) return {zero(spec_), rem};
        std::vector<FieldElement> q(static_cast<size_t>(rem.degree() - d.degree() + 1),
                                    FieldElement::zero(spec_));
        FieldElement lead_inv = d.c_.back().inv();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            FieldElement f = rem.c_.back() * lead_inv;
            q[static_cast<size_t>(shift)] = f;
            std::vector<FieldElement> sub(static_cast<size_t>(shift), FieldElement::zero(spec_));
            for (const auto& dc : d.c_) sub.push_back(dc * f);
            rem = rem - UniPoly(spec_, std::move(sub));
        }
        return {UniPoly(spec_, std::move(q)), rem};
    }

    UniPoly derivative() const {
        std::vector<FieldElement> r;
        for (size_t i = 1; i < c_.size(); ++i)
            r.push_back(c_[i] * FieldElement::from_int(spec_, static_cast<long long>(i)));
        return UniPoly(spec_, std::move(r));
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement acc = FieldElement::zero(spec_);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// p-th root of a polynomial with vanishing derivative (all exponent
    /// positions divisible by p); coefficients get the inverse Frobenius.
    UniPoly pth_root() const {
        int p = spec_->p(), k = spec_->k();
        std::vector<FieldElement> r;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i % static_cast<size_t>(p) == 0) {
                FieldElement a = c_[i];
                for (int j = 0; j < k - 1; ++j) a = a.frobenius();
                r.push_back(a);
            } else if (!c_[i].is_zero()) {
                throw error("UniPoly::pth_root: polynomial is not a p-th power");
            }
        }
        return UniPoly(spec_, std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    SpecPtr spec_;
    std::vector<FieldElement> c_;
};

/// Monic gcd by the Euclidean algorithm; gcd(f, 0) = monic(f).
inline UniPoly gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw error("gcd: both polynomials are zero");
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Squarefree part (radical): the monic product of the distinct
/// irreducible factors. In characteristic p the naive f/gcd(f,f')
/// drops every factor whose multiplicity is divisible by p, so those
/// are split off as an exact p-th power and handled recursively.
inline UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero()) throw error("squarefree_part: zero polynomial");
    if (f.degree() == 0) return UniPoly::constant(f.spec(), gf::FieldElement::one(f.spec()));
    UniPoly fm = f.monic();
    UniPoly d = fm.derivative();
    if (d.is_zero()) return squarefree_part(fm.pth_root());
    UniPoly g = gcd(fm, d);
    UniPoly w = fm.divmod(g).first; // product of factors with multiplicity prime to p
    UniPoly r = g;
    for (;;) {
        UniPoly c = gcd(r, w);
        if (c.degree() <= 0) break;
        r = r.divmod(c).first;
    }
    // r now collects exactly the factors with multiplicity divisible by p
    if (r.degree() <= 0) return w.monic();
    return (w * squarefree_part(r)).monic();
}

/// gcd of two polynomials that are univariate in the same variable of a
/// MultiPoly ring; returns the monic gcd in the same ring.
inline MultiPoly gcd_univariate(const MultiPoly& f, const MultiPoly& g) {
    if (f.is_zero() && g.is_zero()) throw error("gcd_univariate: both zero");
    const auto& vars = f.vars();
    size_t vi = vars.size();
    for (size_t i = 0; i < vars.size(); ++i) {
        if (f.is_univariate_in(i) && g.is_univariate_in(i)) {
            vi = i;
            break;
        }
    }
    if (vi == vars.size()) throw error("gcd_univariate: no common single variable");
    auto densify = [&](const MultiPoly& h) {
        std::vector<FieldElement> c;
        for (const auto& [e, cc] : h.terms()) {
            if (e[vi] >= static_cast<int>(c.size()))
                c.resize(static_cast<size_t>(e[vi]) + 1, FieldElement::zero(h.spec()));
            c[static_cast<size_t>(e[vi])] = cc;
        }
        return UniPoly(h.spec(), std::move(c));
    };
    UniPoly d = gcd(densify(f), densify(g));
    MultiPoly out(f.spec(), vars);
    for (size_t i = 0; i < d.coeffs().size(); ++i) {
        Exponents e(vars.size(), 0);
        e[vi] = static_cast<int>(i);
        out.add_term(std::move(e), d.coeffs()[i]);
    }
    return out;
}

/// Homogeneous binary form of degree n in (t0, t1): coefficients
/// c0..cn with meaning sum c_i t0^(n-i) t1^i. Text format is the
/// comma-separated element strings, highest t0-power first.
class BinaryForm {
public:
    BinaryForm(SpecPtr spec, int degree, std::vector<FieldElement> coeffs)
        : spec_(std::move(spec)), n_(degree), c_(std::move(coeffs)) {
        if (n_ < 0 || c_.size() != static_cast<size_t>(n_) + 1)
            throw error("BinaryForm: coefficient vector must have length degree+1");
    }

    const SpecPtr& spec() const { return spec_; }
    int degree() const { return n_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& coeff(size_t i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const BinaryForm& o) const { return n_ == o.n_ && c_ == o.c_; }

    FieldElement eval(const FieldElement& t0, const FieldElement& t1) const {
        FieldElement acc = FieldElement::zero(t0.spec());
        for (int i = 0; i <= n_; ++i) {
            FieldElement c = gf::embed(c_[static_cast<size_t>(i)], t0.spec());
            acc = acc + c * t0.pow(n_ - i) * t1.pow(i);
        }
        return acc;
    }

    BinaryForm operator+(const BinaryForm& o) const {
        check_same(o);
        std::vector<FieldElement> r;
        for (size_t i = 0; i < c_.size(); ++i) r.push_back(c_[i] + o.c_[i]);
        return BinaryForm(spec_, n_, std::move(r));
    }

    BinaryForm operator-(const BinaryForm& o) const {
        check_same(o);
        std::vector<FieldElement> r;
        for (size_t i = 0; i < c_.size(); ++i) r.push_back(c_[i] - o.c_[i]);
        return BinaryForm(spec_, n_, std::move(r));
    }

    BinaryForm scale(const FieldElement& a) const {
        std::vector<FieldElement> r = c_;
        for (auto& x : r) x = x * a;
        return BinaryForm(spec_, n_, std::move(r));
    }

    BinaryForm operator*(const BinaryForm& o) const {
        if (*spec_ != *o.spec_) throw error("BinaryForm: mismatched specs");
        std::vector<FieldElement> r(static_cast<size_t>(n_ + o.n_) + 1, FieldElement::zero(spec_));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return BinaryForm(spec_, n_ + o.n_, std::move(r));
    }

    /// Substitute (t0, t1) <- (a t0 + b t1, c t0 + d t1).
    BinaryForm substitute_linear(const FieldElement& a, const FieldElement& b,
                                 const FieldElement& c, const FieldElement& d) const {
        BinaryForm u(spec_, 1, {a, b});
        BinaryForm v(spec_, 1, {c, d});
        std::vector<FieldElement> zero_coeffs(static_cast<size_t>(n_) + 1,
                                              FieldElement::zero(spec_));
        BinaryForm acc(spec_, n_, zero_coeffs);
        for (int i = 0; i <= n_; ++i) {
            BinaryForm term(spec_, 0, {c_[static_cast<size_t>(i)]});
            for (int j = 0; j < n_ - i; ++j) term = term * u;
            for (int j = 0; j < i; ++j) term = term * v;
            acc = acc + term;
        }
        return acc;
    }

    /// Dehomogenization h(x, 1): the roots (x:1) with t1 != 0.
    UniPoly dehomogenize() const {
        std::vector<FieldElement> r;
        for (int i = 0; i <= n_; ++i) r.push_back(c_[static_cast<size_t>(n_ - i)]);
        return UniPoly(spec_, std::move(r));
    }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += c_[i].to_string();
        }
        return s;
    }

    static BinaryForm parse(const SpecPtr& spec, const std::string& text) {
        std::vector<FieldElement> c;
        std::string cur;
        std::istringstream is(text);
        while (std::getline(is, cur, ','))
            c.push_back(FieldElement::parse(spec, cur));
        if (c.empty()) throw error("BinaryForm::parse: empty coefficient list");
        int degree = static_cast<int>(c.size()) - 1;
        return BinaryForm(spec, degree, std::move(c));
    }

private:
    void check_same(const BinaryForm& o) const {
        if (*spec_ != *o.spec_ || n_ != o.n_)
            throw error("BinaryForm: mismatched specs or degrees");
    }

    SpecPtr spec_;
    int n_;
    std::vector<FieldElement> c_;
};

/// Number of distinct points of the projective line over the algebraic
/// closure where h vanishes: the degree of the squarefree part of
/// h(x,1), plus one for (1:0) when t1 divides h.
inline int distinct_projective_roots(const BinaryForm& h) {
    if (h.is_zero()) throw error("distinct_projective_roots: zero form");
    UniPoly f = h.dehomogenize();
    int affine = f.degree() <= 0 ? 0 : squarefree_part(f).degree();
    int at_infty = h.coeff(0).is_zero() ? 1 : 0;
    return affine + at_infty;
}

/// True iff r and s have no common zero on the projective line over the
/// algebraic closure (equivalently, nonzero resultant).
inline bool common_zero_free(const BinaryForm& r, const BinaryForm& s) {
    if (r.is_zero() || s.is_zero()) throw error("common_zero_free: zero form");
    bool both_vanish_at_infty = r.coeff(0).is_zero() && s.coeff(0).is_zero();
    if (both_vanish_at_infty) return false;
    UniPoly fr = r.dehomogenize(), fs = s.dehomogenize();
    if (fr.degree() <= 0 || fs.degree() <= 0) return true; // a nonzero constant never vanishes
    return gcd(fr, fs).degree() == 0;
}

} // namespace kf::poly
