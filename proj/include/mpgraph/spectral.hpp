#pragma once

/**
 * @file spectral.hpp
 * @brief Floating-point spectra of symmetric matrices: cyclic Jacobi
 * eigenvalues, least positive / largest negative eigenvalue, HOMO-LUMO gap
 * and index, PSD tests, and the semidefinite characterizations
 *
 *   λ₊(M) = max { μ >= 0 : μ M† ⪯ I },   λ₋(M) = -max { η >= 0 : -η M† ⪯ I }.
 *
 * Exactness stays with ratmath: the rank of M decides how many eigenvalues
 * are zero, and those are clamped before λ₊ / λ₋ are read off.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "blockops.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace mpgraph {

/// Dense square matrix of doubles, row-major.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    static DenseMatrix from(const RatMatrix& m) {
        if (!m.is_square()) throw ShapeError("DenseMatrix: matrix is " + m.shape_str());
        DenseMatrix d;
        d.n = m.rows();
        d.a = to_doubles(m);
        return d;
    }

    static DenseMatrix identity(std::size_t size) {
        DenseMatrix d(size);
        for (std::size_t i = 0; i < size; ++i) d(i, i) = 1.0;
        return d;
    }

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double frobenius() const {
        double s = 0.0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }
};

inline constexpr double kJacobiRelativeTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Eigenvalues of a symmetric matrix in ascending order, by cyclic Jacobi
/// rotations. Sweeps until the off-diagonal Frobenius norm is below
/// 1e-12·‖A‖_F.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix m) {
    const std::size_t n = m.n;
    const double norm = m.frobenius();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, norm))
                throw ShapeError("sym_eigenvalues: matrix is not symmetric");

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    const double target = kJacobiRelativeTolerance * norm;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double app = m(p, p), aqq = m(q, q);
                // Rotation angle from tan(2θ) = 2 a_pq / (a_qq - a_pp), taking
                // the smaller root for t = tan θ.
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m(k, p), akq = m(k, q);
                    m(k, p) = c * akp - s * akq;
                    m(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m(p, k), aqk = m(q, k);
                    m(p, k) = c * apk - s * aqk;
                    m(q, k) = s * apk + c * aqk;
                }
                m(p, q) = m(q, p) = 0.0;
            }
        }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline std::vector<double> sym_eigenvalues(const DenseMatrix& m) { return jacobi_eigenvalues(m); }

inline std::vector<double> sym_eigenvalues(const RatMatrix& m) {
    if (!m.is_symmetric()) throw ShapeError("sym_eigenvalues: matrix is not symmetric");
    return jacobi_eigenvalues(DenseMatrix::from(m));
}

inline bool is_psd(const DenseMatrix& m, double tol) {
    if (m.n == 0) return true;
    return jacobi_eigenvalues(m).front() >= -tol;
}

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    std::optional<double> lambda_plus;
    std::optional<double> lambda_minus;
    std::optional<double> gap;
    std::optional<double> index;
    /// λ₊ = 1/λ_max(M†) and λ₋ = 1/λ_min(M†) within 1e-8 wherever both sides exist.
    bool pinv_consistent = true;
};

inline constexpr double kZeroEigenvalueRelativeTolerance = 1e-9;
inline constexpr double kReciprocalTolerance = 1e-8;

namespace detail {

/// Sets the `count` smallest-magnitude entries of a sorted spectrum to zero.
inline void clamp_zero_eigenvalues(std::vector<double>& ev, std::size_t count) {
    std::vector<std::size_t> idx(ev.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return std::abs(ev[x]) < std::abs(ev[y]); });
    for (std::size_t i = 0; i < count && i < idx.size(); ++i) ev[idx[i]] = 0.0;
    std::sort(ev.begin(), ev.end());
}

struct Extremes {
    std::optional<double> plus, minus;
};

inline Extremes least_positive_largest_negative(const std::vector<double>& ev) {
    double radius = 0.0;
    for (double x : ev) radius = std::max(radius, std::abs(x));
    const double tol = kZeroEigenvalueRelativeTolerance * radius;
    Extremes e;
    for (double x : ev) {
        if (x > tol && !e.plus) e.plus = x;
        if (x < -tol) e.minus = x;
    }
    return e;
}

inline std::vector<double> exact_spectrum(const RatMatrix& m) {
    auto ev = sym_eigenvalues(m);
    clamp_zero_eigenvalues(ev, m.rows() - rank(m));
    return ev;
}

}  // namespace detail

inline SpectralSummary spectral_summary(const RatMatrix& m) {
    SpectralSummary s;
    s.eigenvalues = detail::exact_spectrum(m);
    const auto ext = detail::least_positive_largest_negative(s.eigenvalues);
    s.lambda_plus = ext.plus;
    s.lambda_minus = ext.minus;
    if (s.lambda_plus && s.lambda_minus) {
        s.gap = *s.lambda_plus - *s.lambda_minus;
        s.index = std::max(std::abs(*s.lambda_plus), std::abs(*s.lambda_minus));
    }

    if (m.rows() > 0) {
        const auto pinv_ev = detail::exact_spectrum(pinv_exact(m));
        const double top = pinv_ev.back(), bottom = pinv_ev.front();
        if (s.lambda_plus && top > 0.0)
            s.pinv_consistent &= std::abs(*s.lambda_plus - 1.0 / top) < kReciprocalTolerance;
        if (s.lambda_minus && bottom < 0.0)
            s.pinv_consistent &= std::abs(*s.lambda_minus - 1.0 / bottom) < kReciprocalTolerance;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Semidefinite characterization by bisection

inline constexpr double kBisectionWidth = 1e-10;
inline constexpr int kBisectionMaxIterations = 200;

namespace detail {

/// max { t >= 0 : I + sign·t·P ⪰ 0 } for symmetric P, by bisection on the
/// PSD predicate.
inline double max_feasible_scale(const DenseMatrix& p, double sign, double hi) {
    auto feasible = [&](double t) {
        DenseMatrix x = DenseMatrix::identity(p.n);
        for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += sign * t * p.a[i];
        return is_psd(x, 0.0);
    };
    double lo = 0.0;
    int it = 0;
    while (feasible(hi) && it++ < kBisectionMaxIterations) {
        lo = hi;
        hi *= 2.0;
    }
    for (it = 0; hi - lo >= kBisectionWidth && it < kBisectionMaxIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Initial bracket: twice the reciprocal of the smallest nonzero
/// |eigenvalue| of M† is bounded by 2‖M‖_F.
inline double initial_bracket(const RatMatrix& m) {
    const double f = DenseMatrix::from(m).frobenius();
    return f > 0.0 ? 2.0 * f : 1.0;
}

}  // namespace detail

/// λ₊(M) = max { μ >= 0 : μ M† ⪯ I }.
inline double lambda_plus_by_bisection(const RatMatrix& m) {
    if (!m.is_symmetric()) throw ShapeError("lambda_plus_by_bisection: matrix is not symmetric");
    const RatMatrix p = pinv_exact(m);
    const auto ev = detail::exact_spectrum(p);
    if (ev.empty() || ev.back() <= 0.0) throw NoPositiveEigenvalue("matrix has no positive eigenvalue");
    return detail::max_feasible_scale(DenseMatrix::from(p), -1.0, detail::initial_bracket(m));
}

/// λ₋(M) = -max { η >= 0 : -η M† ⪯ I }.
inline double lambda_minus_by_bisection(const RatMatrix& m) {
    if (!m.is_symmetric()) throw ShapeError("lambda_minus_by_bisection: matrix is not symmetric");
    const RatMatrix p = pinv_exact(m);
    const auto ev = detail::exact_spectrum(p);
    if (ev.empty() || ev.front() >= 0.0) throw NoNegativeEigenvalue("matrix has no negative eigenvalue");
    return -detail::max_feasible_scale(DenseMatrix::from(p), 1.0, detail::initial_bracket(m));
}

enum class LmiSide { Plus, Minus };

inline constexpr double kLmiTolerance = 1e-8;

/// PSD test of the block linear matrix inequality equivalent to
/// μ M† ⪯ I (side Plus) or -μ M† ⪯ I (side Minus):
///
///   [ I ∓ μ S_A†     K B†                  ]
///   [ B† Kᵀ          I ∓ μ B† + B† Kᵀ K B† ]  ⪰ 0.
///
/// Needs K (A,B) compatible so that M† has the A-form.
inline bool block_lmi_check(const BlockSystem& sys, double mu, LmiSide side,
                            double tol = kLmiTolerance) {
    const RatMatrix b_pinv = pinv_exact(sys.b());
    const RatMatrix k = sys.k();
    if (!(k * (b_pinv * sys.b()) == k)) throw IncompatibleBlocks("K(I - B^+ B) != 0");
    const RatMatrix s_a = schur_complement(sys, Block::A);
    const RatMatrix s_a_pinv = pinv_exact(s_a);
    if (!((s_a * s_a_pinv) * k == k)) throw IncompatibleBlocks("(I - S_A S_A^+)K != 0");

    const std::size_t n = sys.n(), m = sys.m();
    const RatMatrix kb = k * b_pinv;
    const RatMatrix lower = RatMatrix::identity(m) + kb.transpose() * kb;
    const double sgn = side == LmiSide::Plus ? -1.0 : 1.0;

    const DenseMatrix s = DenseMatrix::from(s_a_pinv);
    const DenseMatrix bp = DenseMatrix::from(b_pinv);
    const DenseMatrix low = DenseMatrix::from(lower);
    DenseMatrix x(n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = (i == j ? 1.0 : 0.0) + sgn * mu * s(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, n + j) = x(n + j, i) = kb(i, j).to_double();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x(n + i, n + j) = low(i, j) + sgn * mu * bp(i, j);
    return is_psd(x, tol);
}

/// Direct form of the same test: I ∓ μ M† ⪰ 0.
inline bool direct_lmi_check(const RatMatrix& m_pinv, double mu, LmiSide side,
                             double tol = kLmiTolerance) {
    DenseMatrix x = DenseMatrix::from(m_pinv);
    const double sgn = side == LmiSide::Plus ? -1.0 : 1.0;
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) x(i, j) = (i == j ? 1.0 : 0.0) + sgn * mu * x(i, j);
    return is_psd(x, tol);
}

}  // namespace mpgraph
