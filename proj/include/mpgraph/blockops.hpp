#pragma once

/**
 * @file blockops.hpp
 * @brief Generalized Schur complements and the Banachiewicz-Schur form of the
 * pseudo-inverse of a block symmetric matrix
 *
 *         M = [ A   K ]
 *             [ Kᵀ  B ]      A: n×n, B: m×m symmetric, K: n×m.
 *
 * With S_A = A - K B† Kᵀ, the matrix K is (A,B) compatible when
 * K(I - B†B) = 0 and (I - S_A S_A†)K = 0. Under that condition
 *
 *   M† = [ S_A†            -S_A† K B†                ]
 *        [ -B† Kᵀ S_A†     B† + B† Kᵀ S_A† K B†      ]        (A-form)
 *
 * and symmetrically, with S_B = B - Kᵀ A† K, when (I - A A†)K = 0 and
 * K(I - S_B† S_B) = 0:
 *
 *   M† = [ A† + A† K S_B† Kᵀ A†    -A† K S_B† ]
 *        [ -S_B† Kᵀ A†             S_B†        ]              (B-form)
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "signability.hpp"

namespace mpgraph {

class BlockSystem {
public:
    BlockSystem(RatMatrix a, RatMatrix b, RatMatrix k)
        : a_(std::move(a)), b_(std::move(b)), k_(std::move(k)) {
        if (!a_.is_square() || !b_.is_square())
            throw ShapeError("BlockSystem: A and B must be square");
        if (k_.rows() != a_.rows() || k_.cols() != b_.rows())
            throw ShapeError("BlockSystem: K is " + k_.shape_str() + ", expected " +
                             std::to_string(a_.rows()) + "x" + std::to_string(b_.rows()));
        if (!a_.is_symmetric() || !b_.is_symmetric())
            throw ShapeError("BlockSystem: A and B must be symmetric");
    }

    /// Splits a symmetric matrix by the index set `first` (the A block, in
    /// the given order); the remaining indices, ascending, form B.
    static BlockSystem split(const RatMatrix& m, const std::vector<std::size_t>& first) {
        std::vector<char> in_a(m.rows(), 0);
        for (auto i : first) in_a.at(i) = 1;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!in_a[i]) rest.push_back(i);
        return {m.select(first, first), m.select(rest, rest), m.select(first, rest)};
    }

    const RatMatrix& a() const noexcept { return a_; }
    const RatMatrix& b() const noexcept { return b_; }
    const RatMatrix& k() const noexcept { return k_; }
    std::size_t n() const noexcept { return a_.rows(); }
    std::size_t m() const noexcept { return b_.rows(); }

    RatMatrix assemble() const { return block_matrix(a_, k_, k_.transpose(), b_); }

private:
    RatMatrix a_, b_, k_;
};

enum class Block { A, B };

/// S_A = A - K B† Kᵀ, or S_B = B - Kᵀ A† K.
inline RatMatrix schur_complement(const BlockSystem& sys, Block which) {
    if (which == Block::A) return sys.a() - sys.k() * pinv_exact(sys.b()) * sys.k().transpose();
    return sys.b() - sys.k().transpose() * pinv_exact(sys.a()) * sys.k();
}

struct CompatibilityReport {
    bool k_right = false;   // K(I - B†B) = 0
    bool k_schur = false;   // (I - S_A S_A†)K = 0
    bool kt_right = false;  // (I - A A†)K = 0
    bool kt_schur = false;  // K(I - S_B† S_B) = 0

    /// K is (A,B) compatible.
    bool ab_compatible() const { return k_right && k_schur; }
    /// Kᵀ is (B,A) compatible.
    bool ba_compatible() const { return kt_right && kt_schur; }
};

namespace detail {

/// Everything the block formulas need, computed once.
struct BlockParts {
    RatMatrix a_pinv, b_pinv, s_a, s_b, s_a_pinv, s_b_pinv;
    CompatibilityReport report;
};

inline BlockParts block_parts(const BlockSystem& sys) {
    BlockParts p;
    const RatMatrix& k = sys.k();
    const RatMatrix kt = k.transpose();
    p.a_pinv = pinv_exact(sys.a());
    p.b_pinv = pinv_exact(sys.b());
    p.s_a = sys.a() - k * p.b_pinv * kt;
    p.s_b = sys.b() - kt * p.a_pinv * k;
    p.s_a_pinv = pinv_exact(p.s_a);
    p.s_b_pinv = pinv_exact(p.s_b);

    // Each condition is "K equals K projected", which avoids forming I - P.
    p.report.k_right = k * (p.b_pinv * sys.b()) == k;
    p.report.k_schur = (p.s_a * p.s_a_pinv) * k == k;
    p.report.kt_right = (sys.a() * p.a_pinv) * k == k;
    p.report.kt_schur = k * (p.s_b_pinv * p.s_b) == k;
    return p;
}

inline RatMatrix form_a(const BlockSystem& sys, const BlockParts& p) {
    const RatMatrix top_right = -(p.s_a_pinv * sys.k() * p.b_pinv);
    const RatMatrix bottom_right =
        p.b_pinv + p.b_pinv * sys.k().transpose() * p.s_a_pinv * sys.k() * p.b_pinv;
    return block_matrix(p.s_a_pinv, top_right, top_right.transpose(), bottom_right);
}

inline RatMatrix form_b(const BlockSystem& sys, const BlockParts& p) {
    const RatMatrix top_right = -(p.a_pinv * sys.k() * p.s_b_pinv);
    const RatMatrix top_left =
        p.a_pinv + p.a_pinv * sys.k() * p.s_b_pinv * sys.k().transpose() * p.a_pinv;
    return block_matrix(top_left, top_right, top_right.transpose(), p.s_b_pinv);
}

inline std::array<bool, 3> theo1_identities_unchecked(const BlockSystem& sys, const BlockParts& p) {
    const RatMatrix& k = sys.k();
    const RatMatrix kt = k.transpose();
    return {
        p.s_a_pinv * k * p.b_pinv == p.a_pinv * k * p.s_b_pinv,
        p.s_a_pinv == p.a_pinv + p.a_pinv * k * p.s_b_pinv * kt * p.a_pinv,
        p.s_b_pinv == p.b_pinv + p.b_pinv * kt * p.s_a_pinv * k * p.b_pinv,
    };
}

}  // namespace detail

inline CompatibilityReport compatibility(const BlockSystem& sys) {
    return detail::block_parts(sys).report;
}

/// Banachiewicz-Schur assembly of M†. Throws IncompatibleBlocks when the
/// chosen form's premises fail.
inline RatMatrix banachiewicz_schur(const BlockSystem& sys, Block form) {
    const auto p = detail::block_parts(sys);
    if (form == Block::A) {
        if (!p.report.ab_compatible())
            throw IncompatibleBlocks("K is not (A,B) compatible");
        return detail::form_a(sys, p);
    }
    if (!p.report.ba_compatible()) throw IncompatibleBlocks("K^T is not (B,A) compatible");
    return detail::form_b(sys, p);
}

/// M† by whichever form applies, preferring the A-form.
inline RatMatrix banachiewicz_schur(const BlockSystem& sys) {
    const auto p = detail::block_parts(sys);
    if (p.report.ab_compatible()) return detail::form_a(sys, p);
    if (p.report.ba_compatible()) return detail::form_b(sys, p);
    throw IncompatibleBlocks("neither K nor K^T is compatible");
}

/// The three identities that hold when K is (A,B) compatible and Kᵀ is
/// (B,A) compatible:
///   [0] S_A† K B† = A† K S_B†
///   [1] S_A† = A† + A† K S_B† Kᵀ A†
///   [2] S_B† = B† + B† Kᵀ S_A† K B†
inline std::array<bool, 3> theo1_identities(const BlockSystem& sys) {
    const auto p = detail::block_parts(sys);
    if (!p.report.ab_compatible() || !p.report.ba_compatible())
        throw IncompatibleBlocks("identities need K (A,B) compatible and K^T (B,A) compatible");
    return detail::theo1_identities_unchecked(sys, p);
}

/// Schur-complement invertibility: for invertible M with K(I - B†B) = 0,
/// reports whether det(S_A) != 0 (always true under those premises).
inline bool schur_invertibility_check(const BlockSystem& sys) {
    if (bareiss_det(sys.assemble()).is_zero())
        throw PreconditionFailed("block matrix M is singular");
    const RatMatrix k = sys.k();
    if (!(k * (pinv_exact(sys.b()) * sys.b()) == k))
        throw PreconditionFailed("K(I - B^+ B) != 0");
    return !bareiss_det(schur_complement(sys, Block::A)).is_zero();
}

/// Signature produced by the block sufficient condition, with the sign it
/// achieves on M†.
struct BlockSignature {
    Signature signature;
    SignTarget target = SignTarget::NonNegative;
};

namespace detail {

/// Flips whole components of the witnesses d_a and d_b (components of the
/// pattern graphs of h_a and h_b) so that every nonzero d_a[i]·K_ij·d_b[j]
/// equals `want`. Returns false when no flip assignment does it.
inline bool align_witnesses(const RatMatrix& h_a, const RatMatrix& h_b, const RatMatrix& k,
                            Signature& d_a, Signature& d_b, int want) {
    const auto comp_a = pattern_components(h_a);
    const auto comp_b = pattern_components(h_b);
    std::size_t na = 0, nb = 0;
    for (auto c : comp_a) na = std::max(na, c + 1);
    for (auto c : comp_b) nb = std::max(nb, c + 1);

    // Node c < na is an A-component, na + c a B-component. Edge parity p
    // demands flip(u)·flip(v) = p.
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(na + nb);
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) {
            const int s = k(i, j).sign();
            if (s == 0) continue;
            const int parity = want * d_a[i] * s * d_b[j];
            const std::size_t u = comp_a[i], v = na + comp_b[j];
            adj[u].emplace_back(v, parity);
            adj[v].emplace_back(u, parity);
        }

    std::vector<int> flip(na + nb, 0);
    for (std::size_t root = 0; root < na + nb; ++root) {
        if (flip[root]) continue;
        flip[root] = 1;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto [v, parity] : adj[u]) {
                const int required = flip[u] * parity;
                if (!flip[v]) {
                    flip[v] = required;
                    q.push(v);
                } else if (flip[v] != required) {
                    return false;
                }
            }
        }
    }
    for (std::size_t i = 0; i < d_a.size(); ++i) d_a[i] *= flip[comp_a[i]];
    for (std::size_t j = 0; j < d_b.size(); ++j) d_b[j] *= flip[na + comp_b[j]];
    return true;
}

}  // namespace detail

/// Sufficient condition for signability of M†: S_A† and B† signable to the
/// same target by D_A, D_B, K (A,B) compatible, and D_A·K·D_B single-signed.
/// The witnesses may be flipped per component, and all such choices are
/// searched. Returns diag(D_A, ∓D_B) for every target where the premises
/// hold; the result is verified against the assembled M†.
inline std::vector<BlockSignature> theo_si_sufficient(const BlockSystem& sys) {
    std::vector<BlockSignature> out;
    const auto p = detail::block_parts(sys);
    if (!p.report.ab_compatible()) return out;

    std::optional<RatMatrix> m_pinv;
    for (SignTarget target : {SignTarget::NonNegative, SignTarget::NonPositive}) {
        auto d_a0 = find_signature(p.s_a_pinv, target);
        auto d_b0 = find_signature(p.b_pinv, target);
        if (!d_a0 || !d_b0) continue;

        // Positive: D_A K D_B >= 0 pairs with -D_B, <= 0 with +D_B.
        // Negative: the other way round.
        for (int k_sign : {1, -1}) {
            Signature d_a = *d_a0, d_b = *d_b0;
            if (!detail::align_witnesses(p.s_a_pinv, p.b_pinv, sys.k(), d_a, d_b, k_sign)) continue;
            const int b_factor = (target == SignTarget::NonNegative ? -1 : 1) * k_sign;

            Signature d = d_a;
            for (int x : d_b) d.push_back(b_factor * x);

            if (!m_pinv) m_pinv = detail::form_a(sys, p);
            if (!all_entries_have_sign(apply_signature(*m_pinv, d), target))
                throw std::logic_error("block sufficient condition produced an invalid signature");
            out.push_back({std::move(d), target});
            break;
        }
    }
    return out;
}

}  // namespace mpgraph
