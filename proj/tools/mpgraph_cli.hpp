#pragma once

// Command-line front end. run_cli is kept separate from main so the test
// suite can drive it in-process with captured streams.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mpgraph/mpgraph.hpp>

namespace mpgraph::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

inline json rational_json(const Rational& r) { return r.str(); }

inline json matrix_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

/// Floating values are emitted with 12 significant digits.
inline json real_json(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline json optional_real_json(const std::optional<double>& x) {
    return x ? real_json(*x) : json(nullptr);
}

inline json signature_json(const std::optional<Signature>& d) {
    return d ? json(*d) : json(nullptr);
}

inline RatMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read_matrix(in);
}

/// An existing file is read as a matrix; anything else is decoded as a
/// graph6 string.
inline RatMatrix load_matrix(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_matrix_file(arg);
    return adjacency(parse_graph6(arg));
}

inline Graph load_graph(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return graph_of(read_matrix_file(arg));
    return parse_graph6(arg);
}

inline void emit_matrix(std::ostream& out, const RatMatrix& m, const std::string& format) {
    if (format == "json")
        out << matrix_json(m).dump() << '\n';
    else
        write_matrix(out, m);
}

inline void emit_weighted(std::ostream& out, const WeightedGraph& g, const std::string& format) {
    if (format == "dot") {
        out << export_dot(g);
    } else if (format == "json") {
        json edges = json::array();
        for (const auto& [e, w] : g.weights()) edges.push_back({e.first, e.second, w.str()});
        out << json{{"vertices", g.order()}, {"edges", edges}}.dump() << '\n';
    } else {
        out << export_edgelist(g);
    }
}

inline int report_error(std::ostream& err, const Error& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
    return e.is_input_error() ? kUsageError : kDomainError;
}

inline std::size_t default_jobs() {
    if (const char* env = std::getenv("MPGRAPH_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Moore-Penrose pseudo-inverses and signability of graphs", "mpgraph"};
    app.require_subcommand(1);

    std::string input, format = "text";
    const auto formats = CLI::IsMember({"text", "json"});

    auto* pinv = app.add_subcommand("pinv", "Moore-Penrose pseudo-inverse of a symmetric matrix");
    pinv->add_option("input", input, "matrix file or graph6 string")->required();
    pinv->add_option("--format", format)->check(formats);

    auto* inv = app.add_subcommand("inv", "Exact inverse");
    inv->add_option("input", input, "matrix file or graph6 string")->required();
    inv->add_option("--format", format)->check(formats);

    auto* classify = app.add_subcommand("classify", "Invertibility and signability class (JSON)");
    classify->add_option("input", input, "graph6 string or matrix file")->required();

    std::string prefer = "positive";
    auto* pgraph = app.add_subcommand("pinv-graph", "Pseudo-inverse weighted graph");
    pgraph->add_option("input", input, "graph6 string or matrix file")->required();
    pgraph->add_option("--format", format)->check(CLI::IsMember({"text", "json", "dot"}));
    pgraph->add_option("--prefer", prefer, "sign tried first")
        ->check(CLI::IsMember({"positive", "negative"}));

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, lambda+, lambda-, gap, index (JSON)");
    spectrum->add_option("input", input, "matrix file or graph6 string")->required();
    bool bisection = false;
    spectrum->add_flag("--bisection", bisection, "also report lambda+/- from the PSD characterization");

    std::string a_path, b_path, k_path, side = "plus";
    std::optional<double> mu;
    double lmi_tol = kLmiTolerance;
    auto* block = app.add_subcommand("block", "Compatibility report and block pseudo-inverse");
    block->add_option("--a", a_path)->required();
    block->add_option("--b", b_path)->required();
    block->add_option("--k", k_path)->required();
    block->add_option("--format", format)->check(formats);
    block->add_option("--mu", mu, "also evaluate the block LMI at this mu");
    block->add_option("--side", side)->check(CLI::IsMember({"plus", "minus"}));
    block->add_option("--tol", lmi_tol, "PSD tolerance for --mu");

    std::string base;
    std::optional<std::size_t> pendant_vertices_k, pendant_paths_l;
    bool with_inverse = false;
    auto* construct = app.add_subcommand("construct", "Pendant-vertex / pendant-path constructions");
    construct->add_option("--base", base, "graph6 of the base graph")->required();
    auto* pv = construct->add_option("--pendant-vertices", pendant_vertices_k)->check(CLI::PositiveNumber);
    auto* pp = construct->add_option("--pendant-paths", pendant_paths_l)->check(CLI::PositiveNumber);
    pv->excludes(pp);
    construct->add_flag("--inverse", with_inverse, "also print the (pseudo-)inverse weighted edge list");
    construct->add_option("--format", format)->check(CLI::IsMember({"text", "json", "dot"}));

    std::string file, checkpoint;
    std::size_t m = 0, jobs = default_jobs();
    bool as_json = false, large = false, verify_connected = false, assert_invariants = false;
    auto* census = app.add_subcommand("census", "Classify every graph of a graph6 list");
    census->add_option("--file", file)->required()->check(CLI::ExistingFile);
    census->add_option("--m", m, "vertex count")->required()->check(CLI::PositiveNumber);
    census->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    census->add_flag("--json", as_json);
    census->add_option("--checkpoint", checkpoint, "resumable progress file");
    census->add_flag("--large", large, "allow m >= 9");
    census->add_flag("--verify-connected", verify_connected);
    census->add_flag("--assert-invariants", assert_invariants);

    std::string data_dir = ".";
    std::size_t from = 2, to = 8;
    auto* table = app.add_subcommand("table", "Census table over graphNc.g6 files");
    table->add_option("--data-dir", data_dir)->check(CLI::ExistingDirectory);
    table->add_option("--from", from)->check(CLI::Range(1, 64));
    table->add_option("--to", to)->check(CLI::Range(1, 64));
    table->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    table->add_flag("--json", as_json);
    table->add_flag("--large", large, "allow m >= 9");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (*pinv) {
            emit_matrix(out, pinv_exact(load_matrix(input)), format);
        } else if (*inv) {
            emit_matrix(out, inv_exact(load_matrix(input)), format);
        } else if (*classify) {
            const auto c = classify_matrix(load_matrix(input));
            out << json{{"class", to_string(c.report.cls)},
                        {"det", rational_json(c.det)},
                        {"rank", c.rank},
                        {"invertible", c.invertible},
                        {"integral", c.integral},
                        {"signature_pos", signature_json(c.report.positive)},
                        {"signature_neg", signature_json(c.report.negative)}}
                       .dump()
                << '\n';
        } else if (*pgraph) {
            const auto conv = prefer == "negative" ? SignConvention::PreferNegative
                                                   : SignConvention::PreferPositive;
            const auto p = pseudo_inverse_adjacency(load_matrix(input), conv);
            emit_weighted(out, weighted_graph_of(p.weights), format);
        } else if (*spectrum) {
            const RatMatrix a = load_matrix(input);
            const auto s = spectral_summary(a);
            json ev = json::array();
            for (double x : s.eigenvalues) ev.push_back(real_json(x));
            json j{{"eigenvalues", ev},
                   {"lambda_plus", optional_real_json(s.lambda_plus)},
                   {"lambda_minus", optional_real_json(s.lambda_minus)},
                   {"gap", optional_real_json(s.gap)},
                   {"index", optional_real_json(s.index)}};
            if (bisection) {
                j["lambda_plus_bisection"] =
                    s.lambda_plus ? real_json(lambda_plus_by_bisection(a)) : json(nullptr);
                j["lambda_minus_bisection"] =
                    s.lambda_minus ? real_json(lambda_minus_by_bisection(a)) : json(nullptr);
            }
            out << j.dump() << '\n';
        } else if (*block) {
            const BlockSystem sys(read_matrix_file(a_path), read_matrix_file(b_path),
                                  read_matrix_file(k_path));
            const auto c = compatibility(sys);
            std::optional<RatMatrix> mp;
            if (c.ab_compatible() || c.ba_compatible()) mp = banachiewicz_schur(sys);
            std::optional<bool> lmi;
            if (mu) lmi = block_lmi_check(sys, *mu, side == "minus" ? LmiSide::Minus : LmiSide::Plus, lmi_tol);
            if (format == "json") {
                json j{{"k_right", c.k_right},
                       {"k_schur", c.k_schur},
                       {"kt_right", c.kt_right},
                       {"kt_schur", c.kt_schur},
                       {"ab_compatible", c.ab_compatible()},
                       {"ba_compatible", c.ba_compatible()},
                       {"pinv", mp ? matrix_json(*mp) : json(nullptr)}};
                if (lmi) j["lmi_psd"] = *lmi;
                out << j.dump() << '\n';
            } else {
                out << "k_right " << c.k_right << "\nk_schur " << c.k_schur << "\nkt_right "
                    << c.kt_right << "\nkt_schur " << c.kt_schur << '\n';
                if (lmi) out << "lmi_psd " << *lmi << '\n';
                if (mp) write_matrix(out, *mp);
            }
        } else if (*construct) {
            if (!pendant_vertices_k && !pendant_paths_l)
                throw CLI::RequiredError("--pendant-vertices or --pendant-paths");
            const Graph b = parse_graph6(base);
            const Graph g = pendant_vertices_k ? pendant_vertices(b, *pendant_vertices_k)
                                               : pendant_paths(b, *pendant_paths_l);
            if (format == "dot" && !with_inverse) {
                out << export_dot(g);
            } else {
                out << write_graph6(g) << '\n';
            }
            if (with_inverse) {
                const RatMatrix p = pendant_vertices_k ? pendant_vertices_pinv(b, *pendant_vertices_k)
                                                       : pendant_paths_inverse(b, *pendant_paths_l);
                emit_weighted(out, weighted_graph_of(p), format);
            }
        } else if (*census) {
            if (m >= 9 && !large) throw PreconditionFailed("m >= 9 requires --large");
            CensusOptions opt;
            opt.jobs = jobs;
            opt.verify_connected = verify_connected;
            opt.assert_invariants = assert_invariants;
            if (!checkpoint.empty()) opt.checkpoint = checkpoint;
            std::ifstream in(file);
            const CensusRow row = run_census(in, m, opt);
            out << (as_json ? json(row).dump(2) + "\n" : render_table({row}));
        } else if (*table) {
            if (from > to) throw PreconditionFailed("--from must not exceed --to");
            if (to >= 9 && !large) throw PreconditionFailed("m >= 9 requires --large");
            CensusOptions opt;
            opt.jobs = jobs;
            std::vector<CensusRow> rows;
            for (std::size_t n = from; n <= to; ++n) {
                const auto path = std::filesystem::path(data_dir) / ("graph" + std::to_string(n) + "c.g6");
                std::ifstream in(path);
                if (!in) throw ParseError("cannot open " + path.string(), 0);
                rows.push_back(run_census(in, n, opt));
            }
            out << render_table(rows, as_json ? TableFormat::Json : TableFormat::Text);
        }
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    } catch (const Error& e) {
        return report_error(err, e);
    }
    return kOk;
}

}  // namespace mpgraph::cli
