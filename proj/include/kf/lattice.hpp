#pragma once

// Integer symmetric bilinear forms: exact Gram determinants by Bareiss
// elimination, Smith normal form with unimodular transforms, the
// sublattice discriminant law disc(sub) = disc(parent) * index^2, and
// 2-adic valuation bookkeeping. All arithmetic in exact big integers.

#include <cstdlib>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kf/errors.hpp"

namespace kf::lattice {

using Int = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<Int>>; // row-major, rectangular

inline Matrix identity(size_t n) {
    Matrix m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix r(n, std::vector<Int>(c, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

inline Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix r(a[0].size(), std::vector<Int>(a.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(Matrix a) {
    size_t n = a.size();
    if (n == 0) return 1;
    for (const auto& row : a)
        if (row.size() != n) throw error("det: matrix is not square");
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num / prev; // exact division, Bareiss invariant
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Inverse of a unimodular matrix via adjugate; throws if det != +-1.
inline Matrix unimodular_inverse(const Matrix& u) {
    size_t n = u.size();
    Int d = det(u);
    if (d != 1 && d != -1) throw error("unimodular_inverse: determinant is not a unit");
    Matrix inv(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Matrix minor(n - 1, std::vector<Int>(n - 1, 0));
            for (size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = u[r][c];
                }
                ++rr;
            }
            Int cof = det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = cof * d; // divide by det = multiply by +-1
        }
    return inv;
}

/// An integer lattice presented by a symmetric Gram matrix.
struct IntLattice {
    size_t rank = 0;
    Matrix gram;
    std::vector<std::string> labels; // optional basis names

    static IntLattice from_gram(Matrix g, std::vector<std::string> names = {}) {
        size_t n = g.size();
        if (n == 0) throw error("IntLattice: rank must be >= 1");
        for (size_t i = 0; i < n; ++i) {
            if (g[i].size() != n) throw error("IntLattice: Gram matrix is not square");
            for (size_t j = 0; j < i; ++j)
                if (g[i][j] != g[j][i]) throw error("IntLattice: Gram matrix is not symmetric");
        }
        if (!names.empty() && names.size() != n)
            throw error("IntLattice: wrong number of basis labels");
        return IntLattice{n, std::move(g), std::move(names)};
    }

    /// Orthogonal direct sum.
    IntLattice direct_sum(const IntLattice& o) const {
        size_t n = rank + o.rank;
        Matrix g(n, std::vector<Int>(n, 0));
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j) g[i][j] = gram[i][j];
        for (size_t i = 0; i < o.rank; ++i)
            for (size_t j = 0; j < o.rank; ++j) g[rank + i][rank + j] = o.gram[i][j];
        return from_gram(std::move(g));
    }
};

inline Int gram_det(const IntLattice& l) { return det(l.gram); }

/// Smith normal form U*M*V = diag(d1,...) with d_i >= 0, d_i | d_{i+1},
/// and U, V unimodular.
struct SnfResult {
    std::vector<Int> diag; // length min(rows, cols)
    Matrix U;              // rows x rows
    Matrix V;              // cols x cols
};

inline SnfResult smith_normal_form(Matrix a) {
    size_t m = a.size(), n = m == 0 ? 0 : a[0].size();
    Matrix U = identity(m), V = identity(n);
    auto abs_int = [](const Int& x) { return x < 0 ? Int(-x) : x; };

    for (size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Pick the nonzero entry of smallest absolute value in the
            // remaining block as pivot.
            size_t pi = t, pj = t;
            bool found = false;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    if (!found || abs_int(a[i][j]) < abs_int(a[pi][pj])) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) goto done; // remaining block is zero
            if (pi != t) { std::swap(a[pi], a[t]); std::swap(U[pi], U[t]); }
            if (pj != t) {
                for (size_t i = 0; i < m; ++i) std::swap(a[i][pj], a[i][t]);
                for (size_t i = 0; i < n; ++i) std::swap(V[i][pj], V[i][t]);
            }
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                if (q != 0)
                    for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[t][j];
                if (q != 0)
                    for (size_t j = 0; j < m; ++j) U[i][j] -= q * U[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                if (q != 0)
                    for (size_t i = 0; i < m; ++i) a[i][j] -= q * a[i][t];
                if (q != 0)
                    for (size_t i = 0; i < n; ++i) V[i][j] -= q * V[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot now divides its row and column; enforce divisibility
            // on the rest of the block.
            bool divides_all = true;
            for (size_t i = t + 1; i < m && divides_all; ++i)
                for (size_t j = t + 1; j < n && divides_all; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (size_t jj = 0; jj < n; ++jj) a[t][jj] += a[i][jj];
                        for (size_t jj = 0; jj < m; ++jj) U[t][jj] += U[i][jj];
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (a[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) a[t][j] = -a[t][j];
            for (size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
    }
done:
    SnfResult r;
    for (size_t t = 0; t < std::min(m, n); ++t) r.diag.push_back(a[t][t]);
    r.U = std::move(U);
    r.V = std::move(V);
    return r;
}

/// Invariant factors of Z^rows / (column span of gens).
inline std::vector<Int> quotient_invariants(const Matrix& gens) {
    return smith_normal_form(gens).diag;
}

/// A square basis matrix for the column span of a full-row-rank
/// generator matrix (rows x cols, cols >= rows): U^{-1} * diag(d).
inline Matrix basis_from_generators(const Matrix& gens) {
    size_t m = gens.size();
    SnfResult s = smith_normal_form(gens);
    for (size_t i = 0; i < m; ++i)
        if (s.diag[i] == 0) throw error("basis_from_generators: generators do not have full rank");
    Matrix uinv = unimodular_inverse(s.U);
    Matrix d(m, std::vector<Int>(m, 0));
    for (size_t i = 0; i < m; ++i) d[i][i] = s.diag[i];
    return mat_mul(uinv, d);
}

/// A finite-index sublattice: columns of `inclusion` express the
/// sub-basis in the parent basis.
struct Sublattice {
    IntLattice parent;
    Matrix inclusion; // rank x rank, nonzero determinant

    static Sublattice make(IntLattice parent, Matrix inclusion) {
        if (inclusion.size() != parent.rank)
            throw error("Sublattice: inclusion matrix has wrong size");
        for (const auto& row : inclusion)
            if (row.size() != parent.rank) throw error("Sublattice: inclusion matrix has wrong size");
        if (det(inclusion) == 0) throw error("Sublattice: inclusion matrix is singular");
        return Sublattice{std::move(parent), std::move(inclusion)};
    }

    Int index() const {
        Int d = det(inclusion);
        return d < 0 ? Int(-d) : d;
    }

    /// Gram matrix of the sub-basis: B^T G B.
    Matrix sub_gram() const {
        return mat_mul(transpose(inclusion), mat_mul(parent.gram, inclusion));
    }
};

/// disc(sub) = disc(parent) * index^2, cross-checked against the direct
/// Gram determinant of the sub-basis.
inline Int sublattice_disc(const Sublattice& s) {
    Int idx = s.index();
    Int by_index_law = gram_det(s.parent) * idx * idx;
    Int by_gram = det(s.sub_gram());
    if (by_index_law != by_gram)
        throw verification_error("sublattice_disc: index law and direct Gram determinant disagree");
    return by_gram;
}

/// d = 2^valuation * unit with unit odd; comparisons "up to 2-adic
/// units" look at the valuation only.
struct TwoAdic {
    int valuation = 0;
    Int unit;
};

inline TwoAdic two_adic_normalize(Int d) {
    if (d == 0) throw error("two_adic_normalize: zero has no valuation");
    int v = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++v;
    }
    return TwoAdic{v, d};
}

} // namespace kf::lattice
