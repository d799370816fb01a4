#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over the rationals: determinant, reduced row
 * echelon form, inverse, Moore-Penrose pseudo-inverse and Kronecker product.
 *
 * The pseudo-inverse uses a full-rank factorization A = F·G, where F holds
 * the pivot columns of A and G the nonzero rows of rref(A). Then
 *
 *     A† = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ,
 *
 * which never leaves ℚ. Eigen-decomposition routes would, because the
 * eigenvalues of an integer matrix are irrational in general.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace mpgraph {

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact, so integer input keeps integer intermediates.
inline Rational bareiss_det(const RatMatrix& a) {
    if (!a.is_square()) throw ShapeError("bareiss_det: matrix is " + a.shape_str());
    const std::size_t n = a.rows();
    if (n == 0) return 1;

    std::vector<mpq_class> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j).value();
    auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return m[i * n + j]; };

    int sign = 1;
    mpq_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(at(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(at(p, k)) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    mpq_class det = at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return Rational::from_canonical(det);
}

struct RrefResult {
    std::size_t rank = 0;
    RatMatrix rref;
    std::vector<std::size_t> pivot_cols;  // ascending
};

inline RrefResult rank_and_rref(const RatMatrix& a) {
    RrefResult out;
    out.rref = a;
    RatMatrix& r = out.rref;
    const std::size_t rows = r.rows(), cols = r.cols();

    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && r(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(r(p, j), r(row, j));

        const Rational inv = r(row, col).inverse();
        for (std::size_t j = col; j < cols; ++j) r(row, j) *= inv;

        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            const Rational f = r(i, col);
            for (std::size_t j = col; j < cols; ++j) {
                if (!r(row, j).is_zero()) r(i, j) -= f * r(row, j);
            }
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

inline std::size_t rank(const RatMatrix& a) { return rank_and_rref(a).rank; }

/// Exact inverse by Gauss-Jordan elimination on [A | I].
inline RatMatrix inv_exact(const RatMatrix& a) {
    if (!a.is_square()) throw ShapeError("inv_exact: matrix is " + a.shape_str());
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, RatMatrix::identity(n));

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && aug(p, col).is_zero()) ++p;
        if (p == n) throw SingularMatrix("inv_exact: matrix is singular");
        if (p != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(col, j));

        const Rational inv = aug(col, col).inverse();
        for (std::size_t j = col; j < 2 * n; ++j) aug(col, j) *= inv;

        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug(i, col).is_zero()) continue;
            const Rational f = aug(i, col);
            for (std::size_t j = col; j < 2 * n; ++j) {
                if (!aug(col, j).is_zero()) aug(i, j) -= f * aug(col, j);
            }
        }
    }
    return aug.block(0, n, n, n);
}

/// Moore-Penrose pseudo-inverse of any rational matrix, computed exactly.
/// A rank-0 input yields the zero matrix of transposed shape.
inline RatMatrix pinv_exact(const RatMatrix& a) {
    const RrefResult rr = rank_and_rref(a);
    if (rr.rank == 0) return RatMatrix::zeros(a.cols(), a.rows());

    std::vector<std::size_t> all_rows(a.rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
    const RatMatrix f = a.select(all_rows, rr.pivot_cols);       // rows × r
    const RatMatrix g = rr.rref.block(0, 0, rr.rank, a.cols());  // r × cols

    const RatMatrix ft = f.transpose();
    const RatMatrix gt = g.transpose();
    return gt * inv_exact(g * gt) * inv_exact(ft * f) * ft;
}

/// Kronecker product: the block matrix (a_ij · b).
inline RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return out;
}

/// Outcome of checking the four Moore-Penrose identities for a candidate P.
struct MoorePenroseCheck {
    bool apa = false;          // A P A = A
    bool pap = false;          // P A P = P
    bool ap_symmetric = false; // (A P)ᵀ = A P
    bool pa_symmetric = false; // (P A)ᵀ = P A

    bool all() const { return apa && pap && ap_symmetric && pa_symmetric; }
};

inline MoorePenroseCheck moore_penrose_identities(const RatMatrix& a, const RatMatrix& p) {
    if (p.rows() != a.cols() || p.cols() != a.rows())
        throw ShapeError("candidate pseudo-inverse has shape " + p.shape_str() +
                         " for a " + a.shape_str() + " matrix");
    const RatMatrix ap = a * p;
    const RatMatrix pa = p * a;
    MoorePenroseCheck c;
    c.apa = ap * a == a;
    c.pap = pa * p == p;
    c.ap_symmetric = ap.is_symmetric();
    c.pa_symmetric = pa.is_symmetric();
    return c;
}

}  // namespace mpgraph
