#pragma once

/**
 * @file graph.hpp
 * @brief Simple undirected graphs, weighted graphs, and the bridges between
 * them and their adjacency matrices.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace mpgraph {

/// Unordered vertex pair stored with first <= second.
using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t u, std::size_t v) { return u < v ? Edge{u, v} : Edge{v, u}; }

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n) {}

    Graph(std::size_t n, std::initializer_list<Edge> edges) : n_(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::set<Edge>& edges() const noexcept { return edges_; }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= n_ || v >= n_) throw ShapeError("edge endpoint out of range");
        if (u == v) throw NotAGraph("loops are not allowed in a simple graph");
        edges_.insert(make_edge(u, v));
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        return u != v && edges_.count(make_edge(u, v)) != 0;
    }

    std::vector<std::vector<std::size_t>> adjacency_lists() const {
        std::vector<std::vector<std::size_t>> adj(n_);
        for (auto [u, v] : edges_) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (auto [u, v] : edges_) {
            ++d[u];
            ++d[v];
        }
        return d;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t n_ = 0;
    std::set<Edge> edges_;
};

/// Undirected graph with exact nonzero weights; loops are allowed.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t n) : n_(n) {}

    std::size_t order() const noexcept { return n_; }
    const std::map<Edge, Rational>& weights() const noexcept { return weights_; }

    /// Sets the weight of {u, v}; a zero weight removes the pair.
    void set_weight(std::size_t u, std::size_t v, const Rational& w) {
        if (u >= n_ || v >= n_) throw ShapeError("edge endpoint out of range");
        if (w.is_zero())
            weights_.erase(make_edge(u, v));
        else
            weights_[make_edge(u, v)] = w;
    }

    Rational weight(std::size_t u, std::size_t v) const {
        auto it = weights_.find(make_edge(u, v));
        return it == weights_.end() ? Rational{} : it->second;
    }

    /// Unweighted skeleton without loops.
    Graph support() const {
        Graph g(n_);
        for (const auto& [e, w] : weights_)
            if (e.first != e.second) g.add_edge(e.first, e.second);
        return g;
    }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    std::size_t n_ = 0;
    std::map<Edge, Rational> weights_;
};

inline RatMatrix adjacency(const Graph& g) {
    RatMatrix a(g.order(), g.order());
    for (auto [u, v] : g.edges()) {
        a(u, v) = 1;
        a(v, u) = 1;
    }
    return a;
}

inline RatMatrix weighted_adjacency(const WeightedGraph& g) {
    RatMatrix a(g.order(), g.order());
    for (const auto& [e, w] : g.weights()) {
        a(e.first, e.second) = w;
        a(e.second, e.first) = w;
    }
    return a;
}

/// Graph whose adjacency matrix is `a`. Requires a symmetric 0/1 matrix
/// with zero diagonal.
inline Graph graph_of(const RatMatrix& a) {
    if (!a.is_square()) throw NotAGraph("adjacency matrix must be square, got " + a.shape_str());
    if (!a.is_symmetric()) throw NotAGraph("adjacency matrix must be symmetric");
    Graph g(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!a(i, i).is_zero()) throw NotAGraph("adjacency matrix has a nonzero diagonal entry");
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const auto& x = a(i, j);
            if (x.is_zero()) continue;
            if (!x.is_one()) throw NotAGraph("adjacency entry " + x.str() + " is not 0 or 1");
            g.add_edge(i, j);
        }
    }
    return g;
}

/// Weighted graph read off the nonzero entries of a symmetric matrix.
inline WeightedGraph weighted_graph_of(const RatMatrix& a) {
    if (!a.is_symmetric()) throw ShapeError("weighted_graph_of: matrix is not symmetric");
    WeightedGraph g(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) g.set_weight(i, j, a(i, j));
    return g;
}

/// Connected components of the pattern graph of a square matrix (an edge
/// wherever an off-diagonal entry is nonzero). Returns a component id per
/// vertex, ids numbered in order of their lowest vertex.
inline std::vector<std::size_t> pattern_components(const RatMatrix& a) {
    const std::size_t n = a.rows();
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n, unset);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || comp[v] != unset || a(u, v).is_zero()) continue;
                comp[v] = next;
                q.push(v);
            }
        }
        ++next;
    }
    return comp;
}

inline bool is_connected(const Graph& g) {
    if (g.order() <= 1) return true;
    const auto adj = g.adjacency_lists();
    std::vector<char> seen(g.order(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.order();
}

/// Proper 2-coloring (0/1) with the lowest vertex of each component colored
/// 0, or nullopt when the graph has an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
    const auto adj = g.adjacency_lists();
    std::vector<int> color(g.order(), -1);
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

/// Relabels vertex v as perm[v].
inline Graph relabeled(const Graph& g, std::span<const std::size_t> perm) {
    if (perm.size() != g.order()) throw ShapeError("relabeled: permutation length mismatch");
    Graph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

}  // namespace mpgraph
