#pragma once

/**
 * @file signability.hpp
 * @brief Signature-matrix signability of symmetric rational matrices and the
 * pseudo-inverse graphs built from it.
 *
 * A symmetric H is positively (negatively) signable when D·H·D is entrywise
 * nonnegative (nonpositive) for some diagonal ±1 matrix D. The diagonal of H
 * is invariant under D, so it must already carry the target sign. Each
 * nonzero off-diagonal H_ij then fixes the product d_i·d_j, and the question
 * reduces to 2-coloring the pattern graph of H with those parity constraints.
 *
 * Witnesses are canonical: the lowest-index vertex of every component of the
 * pattern graph gets +1. Among all valid signatures this is the
 * lexicographically largest one (reading +1 > -1).
 */

#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace mpgraph {

enum class SignTarget { NonNegative, NonPositive };

enum class SignClass { PositiveOnly, NegativeOnly, Both, Neither };

/// Diagonal of a ±1 signature matrix.
using Signature = std::vector<int>;

inline const char* to_string(SignClass c) {
    switch (c) {
        case SignClass::PositiveOnly: return "PositiveOnly";
        case SignClass::NegativeOnly: return "NegativeOnly";
        case SignClass::Both: return "Both";
        case SignClass::Neither: return "Neither";
    }
    return "?";
}

inline SignClass sign_class(bool positive, bool negative) {
    if (positive && negative) return SignClass::Both;
    if (positive) return SignClass::PositiveOnly;
    if (negative) return SignClass::NegativeOnly;
    return SignClass::Neither;
}

/// D·H·D for the signature d.
inline RatMatrix apply_signature(const RatMatrix& h, const Signature& d) {
    if (!h.is_square() || d.size() != h.rows())
        throw ShapeError("apply_signature: signature length does not match matrix");
    RatMatrix out = h;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (d[i] * d[j] < 0) out(i, j) = -out(i, j);
    return out;
}

inline bool all_entries_have_sign(const RatMatrix& h, SignTarget target) {
    for (const auto& x : h.entries()) {
        if (target == SignTarget::NonNegative && x.sign() < 0) return false;
        if (target == SignTarget::NonPositive && x.sign() > 0) return false;
    }
    return true;
}

/// Canonical signature D with D·H·D of the target sign, or nullopt.
inline std::optional<Signature> find_signature(const RatMatrix& h, SignTarget target) {
    if (!h.is_symmetric()) throw ShapeError("find_signature: matrix is not symmetric");
    const std::size_t n = h.rows();
    const int want = target == SignTarget::NonNegative ? 1 : -1;

    for (std::size_t i = 0; i < n; ++i)
        if (h(i, i).sign() * want < 0) return std::nullopt;

    // Off-diagonal signs once, so the traversal touches GMP values only here.
    std::vector<signed char> s(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s[i * n + j] = static_cast<signed char>(h(i, j).sign());

    Signature d(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (d[root] != 0) continue;
        d[root] = 1;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v) {
                const int sv = s[u * n + v];
                if (sv == 0) continue;
                // want·sign(H_uv) = d_u·d_v makes the entry carry the target sign.
                const int required = d[u] * sv * want;
                if (d[v] == 0) {
                    d[v] = required;
                    q.push(v);
                } else if (d[v] != required) {
                    return std::nullopt;
                }
            }
        }
    }
    return d;
}

/// Classification of a symmetric matrix H itself, with canonical witnesses.
struct SignabilityReport {
    std::optional<Signature> positive;
    std::optional<Signature> negative;
    SignClass cls = SignClass::Neither;
};

inline SignabilityReport signability(const RatMatrix& h) {
    SignabilityReport r;
    r.positive = find_signature(h, SignTarget::NonNegative);
    r.negative = find_signature(h, SignTarget::NonPositive);
    r.cls = sign_class(r.positive.has_value(), r.negative.has_value());
    return r;
}

/// Pseudo-invertibility of a symmetric matrix A: signability of A† together
/// with the invertibility facts used for integral invertibility.
struct MatrixClassification {
    SignabilityReport report;  // over A†
    RatMatrix pinv;
    Rational det;
    std::size_t rank = 0;
    bool invertible = false;
    bool integral = false;  // det = ±1 and A⁻¹ integral
};

inline MatrixClassification classify_matrix(const RatMatrix& a) {
    if (!a.is_symmetric()) throw ShapeError("classify_matrix: matrix is not symmetric");
    MatrixClassification c;
    c.det = bareiss_det(a);
    c.invertible = !c.det.is_zero();
    c.pinv = c.invertible ? inv_exact(a) : pinv_exact(a);
    c.rank = c.invertible ? a.rows() : rank(a);
    c.integral = c.invertible && c.det.abs().is_one() && c.pinv.is_integral();
    c.report = signability(c.pinv);
    return c;
}

// ---------------------------------------------------------------------------
// Pseudo-inverse graphs

enum class SignConvention { PreferPositive, PreferNegative };

/// Nonnegative weighted adjacency D·A†·D (positive) or -D·A†·D (negative).
struct PseudoInverseAdjacency {
    RatMatrix weights;
    Signature signature;
    SignTarget used = SignTarget::NonNegative;
};

/// Signs A† with the requested convention when that witness exists, falling
/// back to the other one. Throws NotSignable when neither exists.
inline PseudoInverseAdjacency pseudo_inverse_adjacency(const RatMatrix& a,
                                                       SignConvention convention) {
    if (!a.is_symmetric()) throw ShapeError("pseudo_inverse_adjacency: matrix is not symmetric");
    const RatMatrix p = pinv_exact(a);
    const SignTarget first = convention == SignConvention::PreferPositive ? SignTarget::NonNegative
                                                                          : SignTarget::NonPositive;
    const SignTarget second = first == SignTarget::NonNegative ? SignTarget::NonPositive
                                                               : SignTarget::NonNegative;
    for (SignTarget t : {first, second}) {
        if (auto d = find_signature(p, t)) {
            RatMatrix w = apply_signature(p, *d);
            if (t == SignTarget::NonPositive) w = -w;
            return {std::move(w), std::move(*d), t};
        }
    }
    throw NotSignable("pseudo-inverse is neither positively nor negatively signable");
}

/// Pseudo-inverse adjacency using exactly the given sign target.
inline std::optional<PseudoInverseAdjacency> pseudo_inverse_adjacency(const RatMatrix& a,
                                                                      SignTarget target) {
    const RatMatrix p = pinv_exact(a);
    auto d = find_signature(p, target);
    if (!d) return std::nullopt;
    RatMatrix w = apply_signature(p, *d);
    if (target == SignTarget::NonPositive) w = -w;
    return PseudoInverseAdjacency{std::move(w), std::move(*d), target};
}

inline WeightedGraph pseudo_inverse_graph(const Graph& g,
                                          SignConvention convention = SignConvention::PreferPositive) {
    return weighted_graph_of(pseudo_inverse_adjacency(adjacency(g), convention).weights);
}

/// Applies the pseudo-inverse graph map twice with the same sign convention
/// and reports whether the original graph (all weights 1) comes back.
inline bool double_pseudo_inverse_check(const Graph& g,
                                        SignConvention convention = SignConvention::PreferPositive) {
    const RatMatrix a = adjacency(g);
    const auto once = pseudo_inverse_adjacency(a, convention);
    const auto twice = pseudo_inverse_adjacency(once.weights, once.used);
    return twice && twice->weights == a;
}

// ---------------------------------------------------------------------------
// Off-diagonal block structure

/// Permutation putting a symmetric matrix into the form [[0, K], [Kᵀ, 0]].
/// `permutation[i]` is the original index placed at position i.
struct OffDiagonalWitness {
    std::vector<std::size_t> permutation;
    std::size_t n = 0;
    std::size_t m = 0;
    RatMatrix k_block;  // n × m
};

/// 2-colors the pattern graph of `m`. The smaller color class goes first
/// (the class holding vertex 0 on ties); both classes keep ascending order.
inline std::optional<OffDiagonalWitness> off_diagonal_form(const RatMatrix& m) {
    if (!m.is_symmetric()) throw ShapeError("off_diagonal_form: matrix is not symmetric");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        if (!m(i, i).is_zero()) return std::nullopt;

    Graph pattern(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!m(i, j).is_zero()) pattern.add_edge(i, j);
    const auto color = two_coloring(pattern);
    if (!color) return std::nullopt;

    std::vector<std::size_t> c0, c1;
    for (std::size_t i = 0; i < n; ++i) ((*color)[i] == 0 ? c0 : c1).push_back(i);
    if (c1.size() < c0.size()) std::swap(c0, c1);

    OffDiagonalWitness w;
    w.n = c0.size();
    w.m = c1.size();
    w.permutation = c0;
    w.permutation.insert(w.permutation.end(), c1.begin(), c1.end());
    w.k_block = m.select(c0, c1);
    return w;
}

/// [[0, (K†)ᵀ], [K†, 0]], the pseudo-inverse of [[0, K], [Kᵀ, 0]].
inline RatMatrix bipartite_pseudo_inverse_pattern(const RatMatrix& k) {
    const RatMatrix kp = pinv_exact(k);  // m × n
    return block_matrix(RatMatrix::zeros(k.rows(), k.rows()), kp.transpose(), kp,
                        RatMatrix::zeros(k.cols(), k.cols()));
}

/// Same, mapped back to the original vertex order of the witnessed matrix.
inline RatMatrix bipartite_pseudo_inverse_pattern(const OffDiagonalWitness& w) {
    const RatMatrix blocked = bipartite_pseudo_inverse_pattern(w.k_block);
    const std::size_t n = w.permutation.size();
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(w.permutation[i], w.permutation[j]) = blocked(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// Norm bound for signable pseudo-inverses

inline Rational entrywise_l1_norm(const RatMatrix& m) {
    Rational s;
    for (const auto& x : m.entries()) s += x.abs();
    return s;
}

inline Rational max_norm(const RatMatrix& v) {
    Rational s;
    for (const auto& x : v.entries())
        if (x.abs() > s) s = x.abs();
    return s;
}

/// Checks ‖A†·A·x‖∞ <= ‖A†‖₁·‖b‖∞, where ‖·‖₁ sums absolute entries.
/// Requires A positively or negatively pseudo-invertible, b >= 0 and
/// -b <= A·x <= b (x and b are column vectors).
inline bool monotone_bound_check(const RatMatrix& a, const RatMatrix& x, const RatMatrix& b) {
    if (!a.is_symmetric()) throw ShapeError("monotone_bound_check: matrix is not symmetric");
    if (x.rows() != a.cols() || x.cols() != 1 || b.rows() != a.rows() || b.cols() != 1)
        throw ShapeError("monotone_bound_check: x and b must be column vectors of matching size");

    const RatMatrix p = pinv_exact(a);
    if (!find_signature(p, SignTarget::NonNegative) && !find_signature(p, SignTarget::NonPositive))
        throw PreconditionFailed("matrix is neither positively nor negatively pseudo-invertible");

    const RatMatrix ax = a * x;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (b(i, 0).sign() < 0) throw PreconditionFailed("b has a negative entry");
        if (ax(i, 0).abs() > b(i, 0)) throw PreconditionFailed("-b <= A x <= b is violated");
    }
    return max_norm(p * ax) <= entrywise_l1_norm(p) * max_norm(b);
}

}  // namespace mpgraph
