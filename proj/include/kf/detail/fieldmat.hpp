#pragma once

// Dense exact linear algebra over GF(p^k) elements. Matrices here are
// tiny (monomial-basis pieces, 2x2 linear parts), so plain Gaussian
// elimination is all we need.

#include <vector>

#include "kf/errors.hpp"
#include "kf/gf.hpp"

namespace kf::detail {

using gf::FieldElement;
using gf::SpecPtr;

using FMatrix = std::vector<std::vector<FieldElement>>; // row-major

inline FMatrix fmat_zero(const SpecPtr& spec, size_t rows, size_t cols) {
    return FMatrix(rows, std::vector<FieldElement>(cols, FieldElement::zero(spec)));
}

inline FMatrix fmat_identity(const SpecPtr& spec, size_t n) {
    FMatrix m = fmat_zero(spec, n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = FieldElement::one(spec);
    return m;
}

inline FMatrix fmat_mul(const FMatrix& a, const FMatrix& b) {
    if (a.empty() || b.empty()) return {};
    FMatrix r = fmat_zero(a[0][0].spec(), a.size(), b[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < b[0].size(); ++j)
                r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<size_t> rref(FMatrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        FieldElement inv = m[r][c].inv();
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            FieldElement f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t fmat_rank(FMatrix m) { return rref(m).size(); }

// Basis of the right kernel {x : Mx = 0}, one column vector per basis
// element, in ascending free-column order.
inline std::vector<std::vector<FieldElement>> fmat_kernel(FMatrix m, const SpecPtr& spec, size_t cols) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<FieldElement> v(cols, FieldElement::zero(spec));
        v[fc] = FieldElement::one(spec);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            if (pivots[pi] < fc) v[pivots[pi]] = -m[pi][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Inverse of a square matrix; throws if singular.
inline FMatrix fmat_inverse(const FMatrix& a) {
    size_t n = a.size();
    const SpecPtr& spec = a[0][0].spec();
    FMatrix aug = fmat_zero(spec, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = FieldElement::one(spec);
    }
    std::vector<size_t> pivots = rref(aug);
    if (pivots.size() != n || pivots[n - 1] != n - 1)
        throw error("fmat_inverse: singular matrix");
    FMatrix inv = fmat_zero(spec, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

} // namespace kf::detail
