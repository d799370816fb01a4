#pragma once

/**
 * @file census.hpp
 * @brief Table-style census of invertible and signable connected graphs
 * over graph6 streams.
 *
 * classify_one is pure and CensusRow addition is commutative, so the stream
 * is cut into chunks that worker threads classify independently; partial
 * rows are summed at the end.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "graph.hpp"
#include "graphio.hpp"
#include "linalg.hpp"
#include "signability.hpp"

namespace mpgraph {

struct GraphRecord {
    Rational det;
    std::size_t rank = 0;
    bool invertible = false;
    bool integral = false;
    std::optional<SignClass> int_class;  // only when integral
    SignClass pseudo_class = SignClass::Neither;
    bool bipartite = false;
};

inline GraphRecord classify_one(const Graph& g) {
    const MatrixClassification c = classify_matrix(adjacency(g));
    GraphRecord r;
    r.det = c.det;
    r.rank = c.rank;
    r.invertible = c.invertible;
    r.integral = c.integral;
    r.pseudo_class = c.report.cls;
    if (c.integral) r.int_class = c.report.cls;
    r.bipartite = is_bipartite(g);
    return r;
}

struct CensusRow {
    std::size_t m = 0;
    std::uint64_t total = 0;
    std::uint64_t invertible = 0;
    std::uint64_t integrally_invertible = 0;
    std::uint64_t int_pos_only = 0, int_neg_only = 0, int_both = 0;
    std::uint64_t pseudo_pos_only = 0, pseudo_neg_only = 0, pseudo_both = 0;

    void add(const GraphRecord& r) {
        ++total;
        invertible += r.invertible;
        integrally_invertible += r.integral;
        if (r.int_class) {
            int_pos_only += *r.int_class == SignClass::PositiveOnly;
            int_neg_only += *r.int_class == SignClass::NegativeOnly;
            int_both += *r.int_class == SignClass::Both;
        }
        pseudo_pos_only += r.pseudo_class == SignClass::PositiveOnly;
        pseudo_neg_only += r.pseudo_class == SignClass::NegativeOnly;
        pseudo_both += r.pseudo_class == SignClass::Both;
    }

    CensusRow& operator+=(const CensusRow& o) {
        total += o.total;
        invertible += o.invertible;
        integrally_invertible += o.integrally_invertible;
        int_pos_only += o.int_pos_only;
        int_neg_only += o.int_neg_only;
        int_both += o.int_both;
        pseudo_pos_only += o.pseudo_pos_only;
        pseudo_neg_only += o.pseudo_neg_only;
        pseudo_both += o.pseudo_both;
        return *this;
    }

    bool operator==(const CensusRow&) const = default;
};

inline void to_json(nlohmann::json& j, const CensusRow& r) {
    j = nlohmann::json{{"m", r.m},
                       {"total", r.total},
                       {"invertible", r.invertible},
                       {"integrally_invertible", r.integrally_invertible},
                       {"int_pos_only", r.int_pos_only},
                       {"int_neg_only", r.int_neg_only},
                       {"int_both", r.int_both},
                       {"pseudo_pos_only", r.pseudo_pos_only},
                       {"pseudo_neg_only", r.pseudo_neg_only},
                       {"pseudo_both", r.pseudo_both}};
}

inline void from_json(const nlohmann::json& j, CensusRow& r) {
    j.at("m").get_to(r.m);
    j.at("total").get_to(r.total);
    j.at("invertible").get_to(r.invertible);
    j.at("integrally_invertible").get_to(r.integrally_invertible);
    j.at("int_pos_only").get_to(r.int_pos_only);
    j.at("int_neg_only").get_to(r.int_neg_only);
    j.at("int_both").get_to(r.int_both);
    j.at("pseudo_pos_only").get_to(r.pseudo_pos_only);
    j.at("pseudo_neg_only").get_to(r.pseudo_neg_only);
    j.at("pseudo_both").get_to(r.pseudo_both);
}

struct CensusOptions {
    std::size_t jobs = 1;
    std::size_t chunk_size = 4096;
    bool verify_connected = false;
    /// Throw PreconditionFailed if a Both-classified graph is not bipartite.
    bool assert_invariants = false;
    /// Sidecar progress file; written every `checkpoint_every` graphs and
    /// read back on start to resume.
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_every = 1'000'000;
};

namespace detail {

struct Line {
    std::string raw;
    std::size_t number = 0;
};

inline CensusRow classify_chunk(const std::vector<Line>& lines, std::size_t begin, std::size_t end,
                                std::size_t m, const CensusOptions& opt) {
    CensusRow row;
    row.m = m;
    for (std::size_t i = begin; i < end; ++i) {
        const Graph g = Graph6Reader::decode(lines[i].raw, lines[i].number).graph;
        const std::string where = "line " + std::to_string(lines[i].number);
        if (g.order() != m)
            throw ParseError(where + ": graph has " + std::to_string(g.order()) +
                                 " vertices, expected " + std::to_string(m),
                             lines[i].number);
        if (opt.verify_connected && !is_connected(g))
            throw NotAGraph(where + ": graph is not connected");
        const GraphRecord r = classify_one(g);
        if (opt.assert_invariants) {
            if (r.pseudo_class == SignClass::Both && !r.bipartite)
                throw PreconditionFailed(where + ": Both-signable graph is not bipartite");
            if (r.bipartite && (r.pseudo_class == SignClass::PositiveOnly ||
                                r.pseudo_class == SignClass::NegativeOnly))
                throw PreconditionFailed(where + ": bipartite graph is one-sided signable");
        }
        row.add(r);
    }
    return row;
}

/// Classifies a batch with up to `jobs` threads. The first exception in
/// line order is rethrown.
inline CensusRow classify_batch(const std::vector<Line>& lines, std::size_t m,
                                const CensusOptions& opt) {
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, lines.size()));
    CensusRow row;
    row.m = m;
    if (jobs <= 1) {
        row += classify_chunk(lines, 0, lines.size(), m, opt);
        return row;
    }
    std::vector<CensusRow> parts(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    const std::size_t per = (lines.size() + jobs - 1) / jobs;
    for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t] {
            const std::size_t b = std::min(lines.size(), t * per);
            const std::size_t e = std::min(lines.size(), b + per);
            try {
                parts[t] = classify_chunk(lines, b, e, m, opt);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& p : parts) row += p;
    return row;
}

struct Progress {
    std::uint64_t graphs_done = 0;
    CensusRow row;
};

inline std::optional<Progress> load_progress(const std::filesystem::path& path, std::size_t m) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("checkpoint " + path.string() + ": " + e.what(), 0);
    }
    Progress p;
    p.graphs_done = j.at("graphs_done").get<std::uint64_t>();
    p.row = j.at("row").get<CensusRow>();
    if (p.row.m != m)
        throw PreconditionFailed("checkpoint " + path.string() + " is for m = " +
                                 std::to_string(p.row.m));
    return p;
}

inline void save_progress(const std::filesystem::path& path, const Progress& p) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << nlohmann::json{{"graphs_done", p.graphs_done}, {"row", p.row}}.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Classifies every graph6 line of `in` (all graphs must have m vertices).
inline CensusRow run_census(std::istream& in, std::size_t m, const CensusOptions& opt = {}) {
    detail::Progress progress;
    progress.row.m = m;
    if (opt.checkpoint) {
        if (auto p = detail::load_progress(*opt.checkpoint, m)) progress = *p;
    }

    Graph6Reader reader(in);
    std::uint64_t consumed = 0;
    while (consumed < progress.graphs_done && reader.next_line()) ++consumed;

    std::uint64_t since_checkpoint = 0;
    std::vector<detail::Line> batch;
    const std::size_t batch_size = std::max<std::size_t>(1, opt.chunk_size) * std::max<std::size_t>(1, opt.jobs);
    bool done = false;
    while (!done) {
        batch.clear();
        while (batch.size() < batch_size) {
            auto l = reader.next_line();
            if (!l) {
                done = true;
                break;
            }
            batch.push_back({std::move(l->first), l->second});
        }
        if (batch.empty()) break;
        progress.row += detail::classify_batch(batch, m, opt);
        progress.graphs_done += batch.size();
        since_checkpoint += batch.size();
        if (opt.checkpoint && since_checkpoint >= opt.checkpoint_every) {
            detail::save_progress(*opt.checkpoint, progress);
            since_checkpoint = 0;
        }
    }
    if (opt.checkpoint) detail::save_progress(*opt.checkpoint, progress);
    return progress.row;
}

inline CensusRow run_census(const std::vector<std::string>& lines, std::size_t m,
                            const CensusOptions& opt = {}) {
    std::ostringstream joined;
    for (const auto& l : lines) joined << l << '\n';
    std::istringstream in(joined.str());
    return run_census(in, m, opt);
}

// ---------------------------------------------------------------------------
// Rendering

enum class TableFormat { Text, Json };

namespace detail {

struct TableLine {
    const char* label;
    std::uint64_t CensusRow::*field;
    bool even_only;  // integral rows are left blank for odd m
};

inline const std::vector<TableLine>& table_lines() {
    static const std::vector<TableLine> lines = {
        {"all conn. graphs", &CensusRow::total, false},
        {"det(A) != 0", &CensusRow::invertible, false},
        {"int. invertible", &CensusRow::integrally_invertible, true},
        {"int. +signable", &CensusRow::int_pos_only, true},
        {"int. -signable", &CensusRow::int_neg_only, true},
        {"int. +-signable", &CensusRow::int_both, true},
        {"pseudo +signable", &CensusRow::pseudo_pos_only, false},
        {"pseudo -signable", &CensusRow::pseudo_neg_only, false},
        {"pseudo +-signable", &CensusRow::pseudo_both, false},
    };
    return lines;
}

}  // namespace detail

/// Text mode mirrors the published layout: one column per m, integral rows
/// shown as "-" for odd m. JSON mode is an array of full CensusRow objects.
inline std::string render_table(const std::vector<CensusRow>& rows, TableFormat format = TableFormat::Text) {
    if (format == TableFormat::Json) return nlohmann::json(rows).dump(2) + "\n";

    constexpr int label_width = 18, cell_width = 9;
    std::ostringstream os;
    auto pad_left = [](const std::string& s, int w) {
        return std::string(s.size() < static_cast<std::size_t>(w) ? w - s.size() : 0, ' ') + s;
    };
    std::string header = std::string(label_width, ' ');
    for (const auto& r : rows) header += pad_left("m=" + std::to_string(r.m), cell_width);
    os << header << '\n';
    if (rows.empty()) return os.str();
    for (const auto& line : detail::table_lines()) {
        std::string label = line.label;
        label.resize(label_width, ' ');
        os << label;
        for (const auto& r : rows) {
            const bool blank = line.even_only && r.m % 2 == 1;
            os << pad_left(blank ? "-" : std::to_string(r.*(line.field)), cell_width);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace mpgraph
