#pragma once

// Exact arithmetic in GF(p^k) for p in {2,3}, k <= 16, with a fixed
// canonical modulus per (p,k), canonical subfield embeddings, and a
// little-endian digit-string serialization ("01" is the generator of F4).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kf/errors.hpp"

namespace kf::gf {

using Coeffs = std::vector<std::uint8_t>; // little-endian, digits 0..p-1

namespace detail {

// Dense polynomial helpers over F_p. Vectors are little-endian
// coefficient lists, not necessarily trimmed.

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Coeffs& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, int p) {
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = static_cast<std::uint8_t>(v % p);
    }
    return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b, int p) {
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = static_cast<std::uint8_t>(((v % p) + p) % p);
    }
    return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, int p) {
    int da = degree(a), db = degree(b);
    if (da < 0 || db < 0) return {};
    Coeffs r(static_cast<size_t>(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j <= db; ++j) {
            int v = r[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            r[static_cast<size_t>(i + j)] = static_cast<std::uint8_t>(v % p);
        }
    }
    return r;
}

// Remainder of a modulo the monic polynomial m.
inline Coeffs mod(Coeffs a, const Coeffs& m, int p) {
    int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a)) {
        int lead = a[static_cast<size_t>(da)];
        for (int j = 0; j <= dm; ++j) {
            int v = a[static_cast<size_t>(da - dm + j)] - lead * m[static_cast<size_t>(j)];
            a[static_cast<size_t>(da - dm + j)] = static_cast<std::uint8_t>(((v % p) + p) % p);
        }
    }
    trim(a);
    return a;
}

inline bool divides(const Coeffs& d, const Coeffs& a, int p) {
    return degree(mod(a, d, p)) < 0;
}

// Trial division against every monic polynomial of degree <= deg/2.
inline bool is_irreducible(const Coeffs& m, int p) {
    int d = degree(m);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int dd = 1; dd <= d / 2; ++dd) {
        Coeffs cand(static_cast<size_t>(dd + 1), 0);
        cand[static_cast<size_t>(dd)] = 1;
        std::int64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (std::int64_t v = 0; v < count; ++v) {
            std::int64_t t = v;
            for (int i = 0; i < dd; ++i) {
                cand[static_cast<size_t>(i)] = static_cast<std::uint8_t>(t % p);
                t /= p;
            }
            if (divides(cand, m, p)) return false;
        }
    }
    return true;
}

} // namespace detail

class FieldSpec;
using SpecPtr = std::shared_ptr<const FieldSpec>;

/// Description of GF(p^k): characteristic, degree, and the monic
/// irreducible modulus (little-endian coefficients, length k+1).
/// Immutable; irreducibility is verified at construction.
class FieldSpec {
public:
    FieldSpec(int p, int k, Coeffs modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
        if (p_ != 2 && p_ != 3) throw error("FieldSpec: characteristic must be 2 or 3");
        if (k_ < 1 || k_ > 16) throw error("FieldSpec: degree must be in 1..16");
        if (detail::degree(modulus_) != k_ || modulus_.back() != 1)
            throw error("FieldSpec: modulus must be monic of degree k");
        for (auto c : modulus_)
            if (c >= p_) throw error("FieldSpec: modulus coefficient out of range");
        if (!detail::is_irreducible(modulus_, p_))
            throw error("FieldSpec: modulus is reducible");
    }

    int p() const { return p_; }
    int k() const { return k_; }
    const Coeffs& modulus() const { return modulus_; }

    /// Number of field elements p^k.
    std::int64_t order() const {
        std::int64_t n = 1;
        for (int i = 0; i < k_; ++i) n *= p_;
        return n;
    }

    bool operator==(const FieldSpec& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
    int p_;
    int k_;
    Coeffs modulus_;
};

namespace detail {

// Fixed canonical moduli (little-endian, including the leading 1).
// Unlisted degrees fall back to the first irreducible in ascending
// digit-value order, which is deterministic across runs.
inline const Coeffs* pinned_modulus(int p, int k) {
    static const Coeffs p2k1{1, 1};                         // x + 1
    static const Coeffs p2k2{1, 1, 1};                      // z^2 + z + 1
    static const Coeffs p2k4{1, 1, 0, 0, 1};                // w^4 + w + 1
    static const Coeffs p2k8{1, 0, 1, 1, 1, 0, 0, 0, 1};    // x^8 + x^4 + x^3 + x^2 + 1
    static const Coeffs p3k1{1, 1};                         // x + 1
    static const Coeffs p3k2{2, 2, 1};                      // x^2 + 2x + 2
    if (p == 2) {
        if (k == 1) return &p2k1;
        if (k == 2) return &p2k2;
        if (k == 4) return &p2k4;
        if (k == 8) return &p2k8;
    } else if (p == 3) {
        if (k == 1) return &p3k1;
        if (k == 2) return &p3k2;
    }
    return nullptr;
}

inline Coeffs canonical_modulus(int p, int k) {
    if (const Coeffs* m = pinned_modulus(p, k)) return *m;
    Coeffs cand(static_cast<size_t>(k + 1), 0);
    cand[static_cast<size_t>(k)] = 1;
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::int64_t v = 0; v < count; ++v) {
        std::int64_t t = v;
        for (int i = 0; i < k; ++i) {
            cand[static_cast<size_t>(i)] = static_cast<std::uint8_t>(t % p);
            t /= p;
        }
        if (is_irreducible(cand, p)) return cand;
    }
    throw error("canonical_modulus: no irreducible polynomial found"); // unreachable
}

} // namespace detail

/// The library's canonical GF(p^k). Deterministic: the same (p,k)
/// always yields the same modulus.
inline SpecPtr field_make(int p, int k) {
    if (p != 2 && p != 3) throw error("field_make: p must be 2 or 3");
    if (k < 1 || k > 16) throw error("field_make: k must be in 1..16");
    return std::make_shared<const FieldSpec>(p, k, detail::canonical_modulus(p, k));
}

/// An element of GF(p^k) in the polynomial representation: a length-k
/// coefficient vector over F_p, reduced modulo the spec's modulus.
/// Immutable; all operations are pure functions.
class FieldElement {
public:
    FieldElement(SpecPtr spec, Coeffs coeffs) : spec_(std::move(spec)) {
        if (!spec_) throw error("FieldElement: null spec");
        coeffs = detail::mod(std::move(coeffs), spec_->modulus(), spec_->p());
        coeffs.resize(static_cast<size_t>(spec_->k()), 0);
        c_ = std::move(coeffs);
    }

    static FieldElement zero(const SpecPtr& spec) { return FieldElement(spec, {}); }
    static FieldElement one(const SpecPtr& spec) { return FieldElement(spec, {1}); }

    /// The residue class of the variable (a root of the modulus).
    static FieldElement generator(const SpecPtr& spec) {
        if (spec->k() == 1) {
            // Degree-1 modulus x + c: the distinguished element is the root -c.
            int p = spec->p();
            int root = (p - spec->modulus()[0]) % p;
            return FieldElement(spec, {static_cast<std::uint8_t>(root)});
        }
        return FieldElement(spec, {0, 1});
    }

    /// The image of an integer under Z -> F_p -> GF(p^k).
    static FieldElement from_int(const SpecPtr& spec, long long v) {
        int p = spec->p();
        long long r = ((v % p) + p) % p;
        return FieldElement(spec, {static_cast<std::uint8_t>(r)});
    }

    const SpecPtr& spec() const { return spec_; }
    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](std::uint8_t x) { return x == 0; });
    }

    bool operator==(const FieldElement& o) const {
        return *spec_ == *o.spec_ && c_ == o.c_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Total order (by spec size, then coefficient tuple); used only to
    /// make containers and scans deterministic.
    bool operator<(const FieldElement& o) const {
        if (spec_->p() != o.spec_->p()) return spec_->p() < o.spec_->p();
        if (spec_->k() != o.spec_->k()) return spec_->k() < o.spec_->k();
        return c_ < o.c_;
    }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        return FieldElement(spec_, detail::add(c_, o.c_, spec_->p()));
    }
    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        return FieldElement(spec_, detail::sub(c_, o.c_, spec_->p()));
    }
    FieldElement operator-() const {
        return FieldElement(spec_, detail::sub({}, c_, spec_->p()));
    }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        return FieldElement(spec_, detail::mul(c_, o.c_, spec_->p()));
    }
    FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

    FieldElement pow(std::int64_t n) const {
        if (n < 0) return inv().pow(-n);
        FieldElement base = *this, acc = one(spec_);
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    /// Multiplicative inverse, via a^(p^k - 2).
    FieldElement inv() const {
        if (is_zero()) throw error("inv: division by zero");
        return pow(spec_->order() - 2);
    }

    /// The field Frobenius a -> a^p.
    FieldElement frobenius() const { return pow(spec_->p()); }

    /// Multiplicative order (0 for the zero element).
    std::int64_t mult_order() const {
        if (is_zero()) return 0;
        FieldElement acc = *this;
        std::int64_t n = 1;
        const FieldElement u = one(spec_);
        while (acc != u) {
            acc = acc * *this;
            ++n;
        }
        return n;
    }

    /// Little-endian digit string, length k ("01" is the F4 generator).
    std::string to_string() const {
        std::string s;
        s.reserve(c_.size());
        for (auto d : c_) s.push_back(static_cast<char>('0' + d));
        return s;
    }

    static FieldElement parse(const SpecPtr& spec, const std::string& s) {
        if (s.empty() || s.size() > static_cast<size_t>(spec->k()))
            throw error("FieldElement::parse: bad length for \"" + s + "\"");
        Coeffs c;
        c.reserve(s.size());
        for (char ch : s) {
            if (ch < '0' || ch >= '0' + spec->p())
                throw error("FieldElement::parse: invalid digit in \"" + s + "\"");
            c.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return FieldElement(spec, std::move(c));
    }

private:
    void check_same(const FieldElement& o) const {
        if (*spec_ != *o.spec_) throw error("FieldElement: mismatched field specs");
    }

    SpecPtr spec_;
    Coeffs c_;
};

/// All p^k elements: zero first, then ascending lexicographic
/// coefficient order (c0 compared first).
inline std::vector<FieldElement> enumerate(const SpecPtr& spec) {
    const int p = spec->p(), k = spec->k();
    std::vector<FieldElement> out;
    out.reserve(static_cast<size_t>(spec->order()));
    Coeffs c(static_cast<size_t>(k), 0);
    for (;;) {
        out.push_back(FieldElement(spec, c));
        int i = k - 1; // c0 is the most significant position in lex order
        while (i >= 0 && c[static_cast<size_t>(i)] == p - 1) {
            c[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
    }
    return out;
}

namespace detail {

inline FieldElement eval_poly(const Coeffs& poly, const FieldElement& x) {
    FieldElement acc = FieldElement::zero(x.spec());
    for (int i = degree(poly); i >= 0; --i) {
        acc = acc * x + FieldElement::from_int(x.spec(), poly[static_cast<size_t>(i)]);
    }
    return acc;
}

// Canonical image of the source generator in the target field: try
// g^((p^k-1)/(p^m-1)) for the target generator g; if that fails to be a
// root of the source modulus (g need not be primitive), scan elements
// in enumeration order and take the first root.
inline FieldElement embed_generator_image(const SpecPtr& source, const SpecPtr& target) {
    const Coeffs& srcmod = source->modulus();
    if (source->k() > 1) {
        FieldElement g = FieldElement::generator(target);
        std::int64_t e = (target->order() - 1) / (source->order() - 1);
        FieldElement cand = g.pow(e);
        if (eval_poly(srcmod, cand).is_zero()) return cand;
        for (const FieldElement& x : enumerate(target))
            if (eval_poly(srcmod, x).is_zero()) return x;
        throw verification_error("embed: no root of the source modulus in the target field");
    }
    // Prime subfield: the generator is a residue, map it directly.
    return FieldElement::from_int(target, FieldElement::generator(source).coeffs()[0]);
}

} // namespace detail

/// Canonical embedding GF(p^m) -> GF(p^k) for m | k. Ring-homomorphic
/// and deterministic.
inline FieldElement embed(const FieldElement& a, const SpecPtr& target) {
    const SpecPtr& source = a.spec();
    if (source->p() != target->p()) throw error("embed: different characteristics");
    if (target->k() % source->k() != 0) throw error("embed: source degree does not divide target degree");
    if (*source == *target) return FieldElement(target, a.coeffs());
    FieldElement img = detail::embed_generator_image(source, target);
    FieldElement acc = FieldElement::zero(target);
    FieldElement pw = FieldElement::one(target);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] != 0)
            acc = acc + FieldElement::from_int(target, a.coeffs()[i]) * pw;
        if (i + 1 < a.coeffs().size()) pw = pw * img;
    }
    return acc;
}

/// True iff a lies in the subfield GF(p^m), i.e. a^(p^m) = a.
inline bool in_subfield(const FieldElement& a, int m) {
    if (m < 1 || a.spec()->k() % m != 0)
        throw error("in_subfield: m must divide the field degree");
    std::int64_t q = 1;
    for (int i = 0; i < m; ++i) q *= a.spec()->p();
    return a.pow(q) == a;
}

/// The primitive third root of unity in GF(2^k), k even: the canonical
/// image of the F4 generator.
inline FieldElement zeta(const SpecPtr& spec) {
    if (spec->p() != 2 || spec->k() % 2 != 0)
        throw error("zeta: field does not contain F4");
    return embed(FieldElement::generator(field_make(2, 2)), spec);
}

} // namespace kf::gf
