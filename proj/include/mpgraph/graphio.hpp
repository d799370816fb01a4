#pragma once

/**
 * @file graphio.hpp
 * @brief graph6 encoding (McKay's format for simple undirected graphs) and
 * edge-list / DOT exporters for weighted graphs.
 *
 * graph6 layout: every byte carries 6 bits offset by 63. The line starts
 * with N(n) (one byte for n <= 62, 126 + 3 bytes for n <= 258047,
 * 126 126 + 6 bytes above that), followed by the upper triangle of the
 * adjacency matrix in column-major order (x(0,1), x(0,2), x(1,2), x(0,3),
 * ...), padded with zero bits to a multiple of 6.
 */

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "graph.hpp"

namespace mpgraph {

namespace detail {

inline int graph6_value(std::string_view line, std::size_t pos) {
    if (pos >= line.size()) throw ParseError("graph6: truncated input", pos);
    const auto c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126)
        throw ParseError("graph6: byte " + std::to_string(c) + " out of range", pos);
    return c - 63;
}

}  // namespace detail

inline constexpr std::uint64_t kGraph6MaxOrder = 68719476735ULL;

inline Graph parse_graph6(std::string_view line) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) throw ParseError("graph6: empty line", 0);
    if (line.front() == ':' || line.front() == '&')
        throw ParseError("graph6: sparse6/digraph6 input is not supported", 0);

    std::size_t pos = 0;
    std::uint64_t n = 0;
    const int first = detail::graph6_value(line, pos);
    if (first < 63) {
        n = static_cast<std::uint64_t>(first);
        pos = 1;
    } else {
        pos = 1;
        int len = 3;
        if (detail::graph6_value(line, pos) == 63) {
            pos = 2;
            len = 6;
        }
        for (int i = 0; i < len; ++i) n = (n << 6) | detail::graph6_value(line, pos++);
        if (n < (len == 3 ? 63u : 258048u)) throw ParseError("graph6: non-minimal order encoding", 0);
    }
    if (n > kGraph6MaxOrder) throw ParseError("graph6: order too large", 0);

    const unsigned __int128 bits128 = static_cast<unsigned __int128>(n) * (n ? n - 1 : 0) / 2;
    if ((bits128 + 5) / 6 > line.size() - pos)
        throw ParseError("graph6: truncated bitstream", line.size());
    const auto bytes = static_cast<std::uint64_t>((bits128 + 5) / 6);
    if (line.size() - pos > bytes)
        throw ParseError("graph6: trailing bytes after bitstream", pos + bytes);

    Graph g(static_cast<std::size_t>(n));
    std::uint64_t k = 0;
    for (std::uint64_t j = 1; j < n; ++j) {
        for (std::uint64_t i = 0; i < j; ++i, ++k) {
            const auto byte_pos = pos + static_cast<std::size_t>(k / 6);
            const int v = detail::graph6_value(line, byte_pos);
            if (v & (1 << (5 - k % 6))) g.add_edge(i, j);
        }
    }
    // Padding bits must be zero for the encoding to be canonical.
    for (; k < bytes * 6; ++k) {
        const auto byte_pos = pos + static_cast<std::size_t>(k / 6);
        if (detail::graph6_value(line, byte_pos) & (1 << (5 - k % 6)))
            throw ParseError("graph6: nonzero padding bits", byte_pos);
    }
    // Validate every byte even when n is tiny.
    for (std::size_t p = pos; p < line.size(); ++p) detail::graph6_value(line, p);
    return g;
}

inline std::string write_graph6(const Graph& g) {
    std::string out;
    const std::uint64_t n = g.order();
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
    }

    int acc = 0, nbits = 0;
    for (std::uint64_t j = 1; j < n; ++j) {
        for (std::uint64_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = nbits = 0;
            }
        }
    }
    if (nbits) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
    return out;
}

struct Graph6Record {
    std::string raw;
    Graph graph;
    std::size_t line_number = 0;  // 1-based
};

/// Single-consumer line reader over a McKay graph list. Skips blank lines
/// and a leading ">>graph6<<" header; parse failures are rethrown as
/// ParseError carrying the 1-based line number.
class Graph6Reader {
public:
    explicit Graph6Reader(std::istream& in) : in_(in) {}

    /// Next raw line without decoding it.
    std::optional<std::pair<std::string, std::size_t>> next_line() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line_no_ == 1 && line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
            if (line.empty()) continue;
            return std::make_pair(std::move(line), line_no_);
        }
        return std::nullopt;
    }

    std::optional<Graph6Record> next() {
        auto l = next_line();
        if (!l) return std::nullopt;
        return decode(std::move(l->first), l->second);
    }

    static Graph6Record decode(std::string raw, std::size_t line_number) {
        try {
            Graph g = parse_graph6(raw);
            return Graph6Record{std::move(raw), std::move(g), line_number};
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_number) + ": " + e.what(), line_number);
        }
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

// ---------------------------------------------------------------------------
// Exporters. Pairs come out sorted by (u, v) with u <= v.

inline std::string export_edgelist(const WeightedGraph& g) {
    std::ostringstream os;
    os << "# vertices " << g.order() << '\n';
    for (const auto& [e, w] : g.weights()) os << e.first << ' ' << e.second << ' ' << w.str() << '\n';
    return os.str();
}

inline std::string export_dot(const WeightedGraph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (std::size_t v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
    for (const auto& [e, w] : g.weights())
        os << "  " << e.first << " -- " << e.second << " [label=\"" << w.str() << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string export_dot(const Graph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (std::size_t v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace mpgraph
