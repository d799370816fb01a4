#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <mpgraph/census.hpp>
#include <mpgraph/constructions.hpp>

#include "corpus.hpp"

using namespace mpgraph;

TEST_CASE("classify_one fixtures", "[census]") {
    const auto k2 = classify_one(complete_graph(2));
    CHECK(k2.det == Rational(-1));
    CHECK(k2.integral);
    CHECK(k2.pseudo_class == SignClass::Both);
    CHECK(k2.int_class == SignClass::Both);

    const auto p5 = classify_one(path_graph(5));
    CHECK(p5.det.is_zero());
    CHECK(p5.rank == 4);
    CHECK(p5.pseudo_class == SignClass::Neither);
    CHECK_FALSE(p5.int_class);

    const auto f = classify_one(fulvene_graph());
    CHECK(f.det.abs().is_one());
    CHECK(f.int_class == SignClass::NegativeOnly);
}

TEST_CASE("census columns", "[census]") {
    std::ifstream in4(corpus::path(4));
    const CensusRow r4 = run_census(in4, 4);
    CHECK(r4.total == 6);
    CHECK(r4.invertible == 3);
    CHECK(r4.integrally_invertible == 2);
    CHECK(r4.pseudo_pos_only == 1);
    CHECK(r4.pseudo_neg_only == 0);
    CHECK(r4.pseudo_both == 3);

    std::ifstream in6(corpus::path(6));
    const CensusRow r6 = run_census(in6, 6);
    CHECK(r6 == CensusRow{6, 112, 52, 29, 20, 4, 4, 27, 7, 13});

    std::ifstream in7(corpus::path(7));
    const CensusRow r7 = run_census(in7, 7);
    CHECK(r7.total == 853);
    CHECK(r7.invertible == 342);
    CHECK(r7.pseudo_pos_only == 111);
    CHECK(r7.pseudo_neg_only == 60);
    CHECK(r7.pseudo_both == 25);
}

TEST_CASE("census is order independent and conserved over partitions", "[census]") {
    auto lines = corpus::lines(7);
    const CensusRow base = run_census(lines, 7);
    std::mt19937_64 rng(41);
    for (std::size_t jobs : {1u, 2u, 3u, 5u}) {
        std::shuffle(lines.begin(), lines.end(), rng);
        CensusOptions opt;
        opt.jobs = jobs;
        opt.chunk_size = 37;
        REQUIRE(run_census(lines, 7, opt) == base);
    }
    const std::size_t cut = lines.size() / 3;
    CensusRow sum = run_census(std::vector<std::string>(lines.begin(), lines.begin() + cut), 7);
    sum += run_census(std::vector<std::string>(lines.begin() + cut, lines.end()), 7);
    CHECK(sum == base);
}

TEST_CASE("census invariants and consistency", "[census]") {
    for (std::size_t m = 2; m <= 7; ++m) {
        std::ifstream in(corpus::path(m));
        CensusOptions opt;
        opt.assert_invariants = true;
        opt.verify_connected = true;
        const CensusRow r = run_census(in, m, opt);
        CHECK(r.invertible <= r.total);
        CHECK(r.integrally_invertible <= r.invertible);
        CHECK(r.int_pos_only + r.int_neg_only + r.int_both <= r.integrally_invertible);
        CHECK(r.pseudo_pos_only + r.pseudo_neg_only + r.pseudo_both <= r.total);
    }
    for (const auto& g : corpus::graphs(2, 7)) {
        const auto r = classify_one(g);
        if (r.int_class) REQUIRE(*r.int_class == r.pseudo_class);
    }
}

TEST_CASE("census errors", "[census]") {
    std::istringstream bad("Cw\nC~\nC!!\n");
    try {
        run_census(bad, 4);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    std::istringstream wrong_order("Bw\n");
    CHECK_THROWS_AS(run_census(wrong_order, 4), ParseError);
    std::istringstream disconnected("C?\n");
    CensusOptions opt;
    opt.verify_connected = true;
    CHECK_THROWS_AS(run_census(disconnected, 4, opt), NotAGraph);
}

TEST_CASE("census checkpoint resumes", "[census]") {
    const auto dir = std::filesystem::temp_directory_path() / "mpgraph_ckpt_test";
    std::filesystem::create_directories(dir);
    const auto ckpt = dir / "progress.json";
    std::filesystem::remove(ckpt);

    auto lines = corpus::lines(6);
    const CensusRow full = run_census(lines, 6);

    CensusOptions opt;
    opt.checkpoint = ckpt;
    opt.checkpoint_every = 10;
    opt.chunk_size = 10;
    // First pass sees only the first 50 graphs, as if interrupted.
    run_census(std::vector<std::string>(lines.begin(), lines.begin() + 50), 6, opt);
    REQUIRE(std::filesystem::exists(ckpt));
    // Second pass over the full list skips those 50.
    CHECK(run_census(lines, 6, opt) == full);
    std::filesystem::remove_all(dir);
}

TEST_CASE("table rendering", "[census]") {
    CHECK(render_table({}) == std::string(18, ' ') + "\n");
    const CensusRow r{3, 2, 1, 0, 0, 0, 0, 0, 0, 1};
    const std::string text = render_table({r});
    CHECK(text.find("m=3") != std::string::npos);
    CHECK(text.find("int. invertible           -") != std::string::npos);
    const auto j = nlohmann::json::parse(render_table({r}, TableFormat::Json));
    CHECK(j.size() == 1);
    CHECK(j[0]["pseudo_both"] == 1);
    CHECK(j[0].get<CensusRow>() == r);
}
