#pragma once

/**
 * @file constructions.hpp
 * @brief Graph families with closed-form (pseudo-)inverses: stars, graphs
 * with k pendant vertices per base vertex, and graphs with a pendant path
 * hung on every base vertex.
 *
 * Vertex order is fixed so the adjacency matrices have the block shapes the
 * closed forms are written in:
 *
 *  - pendant_vertices(G_B, k): pendant copy c of base vertex v is c·m + v
 *    (k blocks of m), base vertex v is k·m + v. M = [[0, K], [Kᵀ, B]] with
 *    K = (I, ..., I)ᵀ.
 *  - pendant_paths(G_B, l): the path vertex at distance p+1 from base
 *    vertex v is p·m + v, base vertex v is l·m + v. A = P_l ⊗ I and
 *    K = (I, 0, ..., 0)ᵀ.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "signability.hpp"
#include "spectral.hpp"

namespace mpgraph {

// ---------------------------------------------------------------------------
// Named graphs

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw PreconditionFailed("cycle_graph needs n >= 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

/// Fulvene: the 5-cycle 0..4 with an exocyclic vertex 5 attached to 0.
inline Graph fulvene_graph() {
    Graph g = cycle_graph(5);
    Graph f(6);
    for (auto [u, v] : g.edges()) f.add_edge(u, v);
    f.add_edge(0, 5);
    return f;
}

/// Star on n + 1 vertices: hub 0 joined to leaves 1..n.
inline Graph star(std::size_t n) {
    if (n < 1) throw PreconditionFailed("star needs n >= 1");
    Graph g(n + 1);
    for (std::size_t i = 1; i <= n; ++i) g.add_edge(0, i);
    return g;
}

// ---------------------------------------------------------------------------
// Pendant vertices

inline Graph pendant_vertices(const Graph& base, std::size_t k) {
    if (k < 1) throw PreconditionFailed("pendant_vertices needs k >= 1");
    const std::size_t m = base.order();
    Graph g((k + 1) * m);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t v = 0; v < m; ++v) g.add_edge(c * m + v, k * m + v);
    for (auto [u, v] : base.edges()) g.add_edge(k * m + u, k * m + v);
    return g;
}

/// (I, ..., I)ᵀ with k identity blocks of size m.
inline RatMatrix stacked_identities(std::size_t k, std::size_t m) {
    return kron(RatMatrix::constant(k, 1, 1), RatMatrix::identity(m));
}

/// Closed form of M† for pendant_vertices(base, k):
///   M† = (1/k²) [[-𝟏 ⊗ B, kK], [kKᵀ, 0]],  𝟏 the k×k all-ones matrix.
inline RatMatrix pendant_vertices_pinv(const Graph& base, std::size_t k) {
    if (k < 1) throw PreconditionFailed("pendant_vertices_pinv needs k >= 1");
    const RatMatrix b = adjacency(base);
    if (bareiss_det(b).is_zero()) throw SingularMatrix("base graph adjacency is singular");
    const std::size_t m = base.order();
    const Rational kk(static_cast<long>(k));
    const RatMatrix kmat = stacked_identities(k, m);
    const RatMatrix top_left = -kron(RatMatrix::constant(k, k, 1), b);
    return block_matrix(top_left, kk * kmat, kk * kmat.transpose(), RatMatrix::zeros(m, m)) *
           (kk * kk).inverse();
}

/// Predicted spectrum of pendant_vertices(base, k), ascending: (k-1)·m
/// zeros plus (μ ± √(μ² + 4k))/2 for every eigenvalue μ of B.
inline std::vector<double> bordered_spectrum(const Graph& base, std::size_t k) {
    const RatMatrix b = adjacency(base);
    if (bareiss_det(b).is_zero()) throw SingularMatrix("base graph adjacency is singular");
    std::vector<double> out((k - 1) * base.order(), 0.0);
    for (double mu : sym_eigenvalues(b)) {
        const double root = std::sqrt(mu * mu + 4.0 * static_cast<double>(k));
        out.push_back((mu - root) / 2.0);
        out.push_back((mu + root) / 2.0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Pendant paths

inline Graph pendant_paths(const Graph& base, std::size_t l) {
    if (l < 1) throw PreconditionFailed("pendant_paths needs l >= 1");
    const std::size_t m = base.order();
    Graph g((l + 1) * m);
    for (std::size_t p = 0; p + 1 < l; ++p)
        for (std::size_t v = 0; v < m; ++v) g.add_edge(p * m + v, (p + 1) * m + v);
    for (std::size_t v = 0; v < m; ++v) g.add_edge(v, l * m + v);
    for (auto [u, v] : base.edges()) g.add_edge(l * m + u, l * m + v);
    return g;
}

inline constexpr std::size_t kMaxClosedFormPathLength = 5;

enum class InverseMode { Auto, ClosedForm, General };

namespace detail {

// Block patterns of M⁻¹ for pendant_paths(base, l), l = 1..5, in the block
// order above. Tokens: 0, I, -I, B, -B, Bi (= B⁻¹), -Bi.
inline const std::vector<std::vector<std::string_view>>& pendant_path_pattern(std::size_t l) {
    static const std::array<std::vector<std::vector<std::string_view>>, 5> patterns = {{
        {{"-B", "I"}, {"I", "0"}},
        {{"0", "I", "0"}, {"I", "Bi", "-Bi"}, {"0", "-Bi", "Bi"}},
        {{"-B", "0", "B", "I"}, {"0", "0", "I", "0"}, {"B", "I", "-B", "-I"}, {"I", "0", "-I", "0"}},
        {{"0", "I", "0", "-I", "0"},
         {"I", "Bi", "0", "-Bi", "-Bi"},
         {"0", "0", "0", "I", "0"},
         {"-I", "-Bi", "I", "Bi", "Bi"},
         {"0", "-Bi", "0", "Bi", "Bi"}},
        {{"-B", "0", "B", "0", "-B", "I"},
         {"0", "0", "I", "0", "-I", "0"},
         {"B", "I", "-B", "0", "B", "-I"},
         {"0", "0", "0", "0", "I", "0"},
         {"-B", "-I", "B", "I", "-B", "I"},
         {"I", "0", "-I", "0", "I", "0"}},
    }};
    return patterns.at(l - 1);
}

}  // namespace detail

/// M⁻¹ for pendant_paths(base, l). ClosedForm assembles the block pattern
/// (l <= 5 only); General inverts exactly; Auto picks ClosedForm when it can.
inline RatMatrix pendant_paths_inverse(const Graph& base, std::size_t l,
                                       InverseMode mode = InverseMode::Auto) {
    if (l < 1) throw PreconditionFailed("pendant_paths_inverse needs l >= 1");
    const RatMatrix b = adjacency(base);
    if (bareiss_det(b).is_zero()) throw SingularMatrix("base graph adjacency is singular");
    if (mode == InverseMode::Auto)
        mode = l <= kMaxClosedFormPathLength ? InverseMode::ClosedForm : InverseMode::General;
    if (mode == InverseMode::General) return inv_exact(adjacency(pendant_paths(base, l)));
    if (l > kMaxClosedFormPathLength)
        throw PreconditionFailed("closed form is only available for l <= 5");

    const std::size_t m = base.order();
    const RatMatrix id = RatMatrix::identity(m);
    const RatMatrix b_inv = inv_exact(b);
    const std::map<std::string_view, RatMatrix> blocks = {
        {"0", RatMatrix::zeros(m, m)}, {"I", id}, {"-I", -id}, {"B", b},
        {"-B", -b}, {"Bi", b_inv}, {"-Bi", -b_inv},
    };
    const auto& pattern = detail::pendant_path_pattern(l);
    RatMatrix out((l + 1) * m, (l + 1) * m);
    for (std::size_t p = 0; p <= l; ++p)
        for (std::size_t q = 0; q <= l; ++q) out.set_block(p * m, q * m, blocks.at(pattern[p][q]));
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

/// Colour refinement run on the disjoint union of g and h, so colours are
/// comparable across the two graphs.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refined_colors(const Graph& g,
                                                                                    const Graph& h) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::size_t>> adj = g.adjacency_lists();
    for (auto& nb : h.adjacency_lists()) {
        adj.push_back(nb);
        for (auto& v : adj.back()) v += n;
    }
    std::vector<std::size_t> color(adj.size(), 0);
    for (std::size_t round = 0; round < adj.size(); ++round) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
        std::vector<std::size_t> next(adj.size());
        for (std::size_t v = 0; v < adj.size(); ++v) {
            std::vector<std::size_t> nc;
            for (auto u : adj[v]) nc.push_back(color[u]);
            std::sort(nc.begin(), nc.end());
            next[v] = ids.try_emplace({color[v], std::move(nc)}, ids.size()).first->second;
        }
        const bool stable = std::set<std::size_t>(next.begin(), next.end()).size() ==
                            std::set<std::size_t>(color.begin(), color.end()).size();
        color = std::move(next);
        if (stable) break;
    }
    return {std::vector<std::size_t>(color.begin(), color.begin() + n),
            std::vector<std::size_t>(color.begin() + n, color.end())};
}

}  // namespace detail

/// Backtracking isomorphism test pruned by colour refinement. Meant for
/// graphs of a few dozen vertices.
inline bool are_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return false;
    const std::size_t n = g.order();
    const auto [cg, ch] = detail::refined_colors(g, h);
    {
        auto sg = cg, sh = ch;
        std::sort(sg.begin(), sg.end());
        std::sort(sh.begin(), sh.end());
        if (sg != sh) return false;
    }

    // Visit g's vertices in BFS order so each new vertex has mapped neighbours.
    std::vector<std::size_t> order;
    {
        const auto adj = g.adjacency_lists();
        std::vector<char> seen(n, 0);
        for (std::size_t s = 0; s < n; ++s) {
            if (seen[s]) continue;
            seen[s] = 1;
            order.push_back(s);
            for (std::size_t i = order.size() - 1; i < order.size(); ++i)
                for (auto v : adj[order[i]])
                    if (!seen[v]) {
                        seen[v] = 1;
                        order.push_back(v);
                    }
        }
    }

    std::vector<std::size_t> map(n, n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
        if (depth == n) return true;
        const std::size_t u = order[depth];
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || cg[u] != ch[v]) continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                const std::size_t w = order[d];
                ok = g.has_edge(u, w) == h.has_edge(v, map[w]);
            }
            if (!ok) continue;
            map[u] = v;
            used[v] = 1;
            if (extend(depth + 1)) return true;
            used[v] = 0;
        }
        map[u] = n;
        return false;
    };
    return extend(0);
}

/// Builds G_B with one pendant vertex per base vertex, takes its negative
/// pseudo-inverse graph, and tests whether the support of that weighted
/// graph is isomorphic to the construction itself.
inline bool corona_self_inverse_check(const Graph& base) {
    const Graph corona = pendant_vertices(base, 1);
    const auto inverse = pseudo_inverse_adjacency(adjacency(corona), SignTarget::NonPositive);
    if (!inverse) throw NotSignable("corona pseudo-inverse is not negatively signable");
    return are_isomorphic(weighted_graph_of(inverse->weights).support(), corona);
}

}  // namespace mpgraph
