// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <mpgraph/mpgraph.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace mpgraph;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << title << " :: " << detail << '\n';
    std::cout.flush();
    if (!ok) ++failures;
}

RatMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> entry(-2, 2);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = Rational(entry(rng));
    return m;
}

BlockSystem random_split(std::mt19937_64& rng, const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> first;
    do {
        first.clear();
        for (std::size_t v = 0; v < n; ++v)
            if (rng() & 1) first.push_back(v);
    } while (first.empty() || first.size() == n);
    return BlockSystem::split(adjacency(g), first);
}

// Published census cells, m = 2..8. -1 marks a blank cell.
struct PublishedColumn {
    std::size_t m;
    long total, invertible, integral, int_pos, int_neg, int_both, ps_pos, ps_neg, ps_both;
};

constexpr std::array<PublishedColumn, 7> kTable = {{
    {2, 1, 1, 1, 0, 0, 1, 0, 0, 1},
    {3, 2, 1, -1, -1, -1, -1, 0, 0, 1},
    {4, 6, 3, 2, 1, 0, 1, 1, 0, 3},
    {5, 21, 8, -1, -1, -1, -1, 3, 1, 4},
    {6, 112, 52, 29, 20, 4, 4, 27, 7, 13},
    {7, 853, 342, -1, -1, -1, -1, 111, 60, 25},
    {8, 11117, 5724, 2381, 1601, 235, 25, 2001, 638, 93},
}};

void criterion_table() {
    std::vector<CensusRow> rows;
    int mismatches = 0, cells = 0;
    for (const auto& col : kTable) {
        std::ifstream in(corpus::path(col.m));
        CensusOptions opt;
        opt.jobs = 2;
        const CensusRow r = run_census(in, col.m, opt);
        rows.push_back(r);
        const std::array<std::pair<long, std::uint64_t>, 9> pairs = {{
            {col.total, r.total},
            {col.invertible, r.invertible},
            {col.integral, r.integrally_invertible},
            {col.int_pos, r.int_pos_only},
            {col.int_neg, r.int_neg_only},
            {col.int_both, r.int_both},
            {col.ps_pos, r.pseudo_pos_only},
            {col.ps_neg, r.pseudo_neg_only},
            {col.ps_both, r.pseudo_both},
        }};
        for (auto [want, got] : pairs) {
            if (want < 0) continue;
            ++cells;
            if (static_cast<std::uint64_t>(want) != got) ++mismatches;
        }
    }
    std::cout << render_table(rows);
    report(1, "census table, m = 2..8", mismatches == 0,
           std::to_string(cells) + " published cells, " + std::to_string(mismatches) + " mismatches");
}

void criterion_moore_penrose(const std::vector<Graph>& all) {
    std::size_t fails = 0, count = 0;
    for (const auto& g : all) {
        const RatMatrix a = adjacency(g);
        fails += !moore_penrose_identities(a, pinv_exact(a)).all();
        ++count;
    }
    std::mt19937_64 rng(0x5eed2);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int t = 0; t < 500; ++t) {
        const RatMatrix a = random_symmetric(rng, size(rng));
        fails += !moore_penrose_identities(a, pinv_exact(a)).all();
        ++count;
    }
    report(2, "Moore-Penrose identities", fails == 0,
           std::to_string(count) + " matrices (" + std::to_string(all.size()) +
               " graphs + 500 random), " + std::to_string(fails) + " failures");
}

void criterion_signability(const std::vector<Graph>& all) {
    std::size_t mismatches = 0, checks = 0;
    for (const auto& g : all) {
        const RatMatrix a = adjacency(g);
        for (const RatMatrix& h : {a, pinv_exact(a)}) {
            for (auto target : {SignTarget::NonNegative, SignTarget::NonPositive}) {
                ++checks;
                if (find_signature(h, target) != oracle::exhaustive_signature(h, target)) ++mismatches;
            }
        }
    }
    report(3, "signature search vs exhaustive 2^n", mismatches == 0,
           std::to_string(checks) + " searches on adjacency and pseudo-inverse, " +
               std::to_string(mismatches) + " mismatches");
}

void criterion_banachiewicz(const std::vector<Graph>& all) {
    std::mt19937_64 rng(0xb5c0);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::size_t compatible = 0, incompatible = 0, wrong = 0, theo1_fail = 0, form_b_checked = 0;
    for (int t = 0; t < 200; ++t) {
        const Graph& g = all[pick(rng)];
        const BlockSystem sys = random_split(rng, g);
        const auto c = compatibility(sys);
        const RatMatrix expected = pinv_exact(sys.assemble());
        if (c.ab_compatible()) {
            ++compatible;
            wrong += banachiewicz_schur(sys, Block::A) != expected;
        } else {
            ++incompatible;
        }
        if (c.ba_compatible()) {
            ++form_b_checked;
            wrong += banachiewicz_schur(sys, Block::B) != expected;
        }
        if (c.ab_compatible() && c.ba_compatible()) {
            const auto ids = theo1_identities(sys);
            theo1_fail += !(ids[0] && ids[1] && ids[2]);
        }
    }
    const bool ok = wrong == 0 && theo1_fail == 0 && compatible >= 10 && incompatible >= 10;
    report(4, "Banachiewicz-Schur vs exact pseudo-inverse", ok,
           "200 systems: " + std::to_string(compatible) + " (A,B)-compatible, " +
               std::to_string(incompatible) + " not; " + std::to_string(form_b_checked) +
               " B-form checks; " + std::to_string(wrong) + " mismatches, " +
               std::to_string(theo1_fail) + " identity failures");
}

void criterion_constructions() {
    const std::vector<std::pair<std::string, Graph>> bases = {
        {"K2", complete_graph(2)}, {"C3", cycle_graph(3)}, {"fulvene", fulvene_graph()},
        {"P4", path_graph(4)},     {"K4", complete_graph(4)},
    };
    std::size_t checks = 0;
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) bad.push_back(what);
    };
    for (const auto& [name, b] : bases) {
        const bool bipartite = is_bipartite(b);
        const auto base_class = classify_matrix(adjacency(b)).report.cls;
        for (std::size_t k = 1; k <= 3; ++k) {
            const std::string tag = name + " k=" + std::to_string(k);
            const RatMatrix m = adjacency(pendant_vertices(b, k));
            const auto c = classify_matrix(m);
            check(pendant_vertices_pinv(b, k) == c.pinv, tag + " closed form");
            const auto predicted = bordered_spectrum(b, k);
            const auto jac = sym_eigenvalues(m);
            bool close = predicted.size() == jac.size();
            for (std::size_t i = 0; close && i < jac.size(); ++i) close = std::abs(predicted[i] - jac[i]) < 1e-8;
            check(close, tag + " spectrum");
            check(c.report.negative.has_value(), tag + " negative");
            check(c.report.positive.has_value() == bipartite, tag + " positive iff bipartite");
        }
        for (std::size_t l = 2; l <= 5; ++l) {
            const std::string tag = name + " l=" + std::to_string(l);
            const RatMatrix m = adjacency(pendant_paths(b, l));
            const auto c = classify_matrix(m);
            check(c.invertible, tag + " invertible");
            check(pendant_paths_inverse(b, l, InverseMode::ClosedForm) == inv_exact(m), tag + " closed form");
            if (l % 2 == 1) {
                check(c.integral && c.report.negative.has_value(), tag + " negatively integral");
                if (bipartite) check(c.report.positive.has_value(), tag + " positive");
            } else {
                if (base_class == SignClass::PositiveOnly || base_class == SignClass::Both)
                    check(c.report.positive.has_value(), tag + " positive inherited");
                if (base_class == SignClass::NegativeOnly || base_class == SignClass::Both)
                    check(c.report.negative.has_value(), tag + " negative inherited");
            }
        }
    }
    std::string detail = std::to_string(checks) + " checks over K2, C3, fulvene, P4, K4";
    for (const auto& b : bad) detail += "; failed: " + b;
    report(5, "closed-form constructions", bad.empty(), detail);
}

void criterion_fixtures() {
    std::vector<std::string> bad;
    const RatMatrix s6 = adjacency(star(5));
    if (pinv_exact(s6) != s6 * Rational(1, 5)) bad.push_back("star pinv");

    const RatMatrix p5 = adjacency(path_graph(5));
    if (classify_matrix(p5).report.cls != SignClass::Neither) bad.push_back("P5 class");
    const auto ev = sym_eigenvalues(p5);
    const std::vector<double> want = {-std::sqrt(3.0), -1.0, 0.0, 1.0, std::sqrt(3.0)};
    for (std::size_t i = 0; i < 5; ++i)
        if (std::abs(ev[i] - want[i]) >= 1e-10) bad.push_back("P5 spectrum");

    const RatMatrix f = adjacency(fulvene_graph());
    if (classify_matrix(f).report.cls != SignClass::NegativeOnly) bad.push_back("fulvene class");
    const double lp = spectral_summary(f).lambda_plus.value_or(0.0);
    if (std::abs(lp - 0.6180) >= 1e-4) bad.push_back("fulvene lambda+");

    const BlockSystem independent({{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}, {{0, 1}, {0, 0}});
    const auto c = compatibility(independent);
    if (!(c.k_right && !c.k_schur)) bad.push_back("independence fixture compatibility");

    std::ostringstream detail;
    detail << "S6 pinv = A/5, P5 Neither, fulvene NegativeOnly lambda+ = " << lp
           << ", independence fixture k_right=" << c.k_right << " k_schur=" << c.k_schur;
    for (const auto& b : bad) detail << "; failed: " << b;
    report(6, "named fixtures", bad.empty(), detail.str());
}

void criterion_spectral(const std::vector<Graph>& upto7, const std::vector<Graph>& upto8) {
    std::size_t graphs = 0, bisect_bad = 0;
    double worst = 0.0;
    for (const auto& g : upto7) {
        const RatMatrix a = adjacency(g);
        const auto pev = sym_eigenvalues(pinv_exact(a));
        if (pev.empty() || pev.back() <= 1e-12) continue;
        ++graphs;
        const double diff = std::abs(lambda_plus_by_bisection(a) - 1.0 / pev.back());
        worst = std::max(worst, diff);
        bisect_bad += diff >= 1e-8;
    }

    std::mt19937_64 rng(0x1e1);
    std::uniform_int_distribution<std::size_t> pick(0, upto8.size() - 1);
    std::size_t systems = 0, evaluations = 0, disagreements = 0, attempts = 0;
    while (systems < 50 && attempts < 100000) {
        ++attempts;
        const BlockSystem sys = random_split(rng, upto8[pick(rng)]);
        if (!compatibility(sys).ab_compatible()) continue;
        ++systems;
        const RatMatrix mp = pinv_exact(sys.assemble());
        const auto s = spectral_summary(sys.assemble());
        for (auto side : {LmiSide::Plus, LmiSide::Minus}) {
            const auto scale = side == LmiSide::Plus ? s.lambda_plus : s.lambda_minus;
            const double base = scale ? std::abs(*scale) : 1.0;
            for (int j = 0; j < 20; ++j) {
                const double mu = base * (j + 0.55) / 10.0;
                ++evaluations;
                disagreements += block_lmi_check(sys, mu, side) != direct_lmi_check(mp, mu, side);
            }
        }
    }
    std::ostringstream detail;
    detail << graphs << " graphs, worst |bisection - 1/lmax(A+)| = " << worst << "; " << systems
           << " compatible systems, " << evaluations << " LMI evaluations, " << disagreements
           << " disagreements";
    report(7, "spectral bisection and block LMI", bisect_bad == 0 && systems == 50 && disagreements == 0,
           detail.str());
}

void criterion_structure(const std::vector<Graph>& all) {
    std::size_t both = 0, bipartite_one_sided = 0, bad_both = 0;
    for (const auto& g : all) {
        const RatMatrix a = adjacency(g);
        const auto c = classify_matrix(a);
        const bool bip = is_bipartite(g);
        if (bip && (c.report.cls == SignClass::PositiveOnly || c.report.cls == SignClass::NegativeOnly))
            ++bipartite_one_sided;
        if (c.report.cls != SignClass::Both) continue;
        ++both;
        const auto w = off_diagonal_form(a);
        if (!bip || !w) {
            ++bad_both;
            continue;
        }
        const RatMatrix kp = pinv_exact(w->k_block);  // m x n
        bool single = true;
        for (const auto& d : {*c.report.positive, *c.report.negative}) {
            int seen = 0;
            for (std::size_t i = 0; i < w->m; ++i)
                for (std::size_t j = 0; j < w->n; ++j) {
                    const int s = d[w->permutation[w->n + i]] * kp(i, j).sign() * d[w->permutation[j]];
                    if (s != 0 && seen != 0 && s != seen) single = false;
                    if (s != 0) seen = s;
                }
        }
        bad_both += !single;
    }
    report(8, "structural invariants", bad_both == 0 && bipartite_one_sided == 0,
           std::to_string(both) + " Both-classified graphs, " + std::to_string(bad_both) +
               " without a bipartite off-diagonal witness; " + std::to_string(bipartite_one_sided) +
               " one-sided bipartite graphs");
}

void criterion_double_inverse(const std::vector<Graph>& upto7) {
    std::size_t signable = 0, fails = 0;
    for (const auto& g : upto7) {
        const auto cls = classify_matrix(adjacency(g)).report.cls;
        if (cls == SignClass::Neither) continue;
        ++signable;
        if (cls == SignClass::PositiveOnly || cls == SignClass::Both)
            fails += !double_pseudo_inverse_check(g, SignConvention::PreferPositive);
        if (cls == SignClass::NegativeOnly || cls == SignClass::Both)
            fails += !double_pseudo_inverse_check(g, SignConvention::PreferNegative);
    }
    report(9, "double pseudo-inverse identity", fails == 0,
           std::to_string(signable) + " signable graphs, " + std::to_string(fails) + " failures");
}

void criterion_graph6() {
    std::size_t lines = 0, roundtrip_bad = 0;
    std::vector<std::string> seeds;
    for (std::size_t m = 1; m <= 8; ++m)
        for (const auto& l : corpus::lines(m)) {
            ++lines;
            roundtrip_bad += write_graph6(parse_graph6(l)) != l;
            seeds.push_back(l);
        }

    std::mt19937_64 rng(0xf022);
    std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255), op(0, 4);
    std::size_t parse_errors = 0, valid = 0, crashes = 0;
    for (int t = 0; t < 100000; ++t) {
        std::string s = seeds[pick(rng)];
        const int edits = 1 + static_cast<int>(rng() % 3);
        for (int e = 0; e < edits; ++e) {
            const std::size_t pos = s.empty() ? 0 : rng() % s.size();
            switch (op(rng)) {
                case 0: if (!s.empty()) s[pos] = static_cast<char>(byte(rng)); break;
                case 1: s.insert(s.begin() + pos, static_cast<char>(byte(rng))); break;
                case 2: if (!s.empty()) s.erase(pos, 1); break;
                case 3: s.resize(pos); break;
                default: s.insert(pos, s.substr(0, pos)); break;
            }
        }
        try {
            const Graph g = parse_graph6(s);
            ++valid;
            std::string expect = s;
            while (!expect.empty() && (expect.back() == '\n' || expect.back() == '\r')) expect.pop_back();
            if (write_graph6(g) != expect) ++crashes;
        } catch (const ParseError&) {
            ++parse_errors;
        } catch (...) {
            ++crashes;
        }
    }
    report(10, "graph6 round-trip and fuzzing", roundtrip_bad == 0 && crashes == 0,
           std::to_string(lines) + " lines re-serialized, " + std::to_string(roundtrip_bad) +
               " differ; 100000 mutants: " + std::to_string(parse_errors) + " ParseError, " +
               std::to_string(valid) + " still valid, " + std::to_string(crashes) + " other outcomes");
}

}  // namespace

int main() {
    const auto upto7 = corpus::graphs(1, 7);
    const auto upto8 = corpus::graphs(1, 8);

    criterion_table();
    criterion_moore_penrose(upto8);
    criterion_signability(upto8);
    criterion_banachiewicz(upto8);
    criterion_constructions();
    criterion_fixtures();
    criterion_spectral(upto7, upto8);
    criterion_structure(upto8);
    criterion_double_inverse(upto7);
    criterion_graph6();

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}
