// Builds the triangle with two pendant vertices per vertex, prints its
// pseudo-inverse graph and checks the closed form against the exact route.

#include <iostream>

#include <mpgraph/mpgraph.hpp>

int main() {
    using namespace mpgraph;

    const Graph base = cycle_graph(3);
    const Graph g = pendant_vertices(base, 2);
    std::cout << "graph6: " << write_graph6(g) << '\n';

    const RatMatrix closed = pendant_vertices_pinv(base, 2);
    const RatMatrix exact = pinv_exact(adjacency(g));
    std::cout << "closed form matches: " << (closed == exact ? "yes" : "no") << '\n';

    const auto c = classify_matrix(adjacency(g));
    std::cout << "class: " << to_string(c.report.cls) << '\n';

    const auto inverse = pseudo_inverse_adjacency(adjacency(g), SignConvention::PreferNegative);
    std::cout << export_edgelist(weighted_graph_of(inverse.weights));

    const auto s = spectral_summary(adjacency(g));
    if (s.lambda_plus) std::cout << "lambda+ = " << *s.lambda_plus << '\n';
    if (s.lambda_minus) std::cout << "lambda- = " << *s.lambda_minus << '\n';
}
