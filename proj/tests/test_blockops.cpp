#include <catch_amalgamated.hpp>

#include <random>

#include <mpgraph/blockops.hpp>
#include <mpgraph/constructions.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace mpgraph;

namespace {

BlockSystem independence_fixture() { return BlockSystem({{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}, {{0, 1}, {0, 0}}); }

BlockSystem pendant_system(const Graph& base, std::size_t k) {
    const std::size_t m = base.order();
    return BlockSystem(RatMatrix::zeros(k * m, k * m), adjacency(base), stacked_identities(k, m));
}

BlockSystem star_blocks(std::size_t n) {
    return BlockSystem(RatMatrix::zeros(n, n), RatMatrix::zeros(1, 1), RatMatrix::constant(n, 1, 1));
}

}  // namespace

TEST_CASE("block system validation", "[blockops]") {
    CHECK_THROWS_AS(BlockSystem(RatMatrix(2, 2), RatMatrix(1, 1), RatMatrix(1, 1)), ShapeError);
    CHECK_THROWS_AS(BlockSystem(RatMatrix{{0, 1}, {0, 0}}, RatMatrix(1, 1), RatMatrix(2, 1)), ShapeError);
    const RatMatrix p4 = adjacency(path_graph(4));
    const auto sys = BlockSystem::split(p4, {3, 0});
    CHECK(sys.n() == 2);
    CHECK(sys.m() == 2);
    const std::vector<std::size_t> order{3, 0, 1, 2};
    CHECK(sys.assemble() == p4.permuted(order));
}

TEST_CASE("Schur complements", "[blockops]") {
    CHECK(schur_complement(star_blocks(4), Block::A).is_zero());
    CHECK(schur_complement(independence_fixture(), Block::A).is_zero());
    CHECK(schur_complement(independence_fixture(), Block::B).is_zero());
    const Graph k2 = complete_graph(2);
    const RatMatrix b_inv = inv_exact(adjacency(k2));
    CHECK(schur_complement(pendant_system(k2, 3), Block::A) == -kron(RatMatrix::constant(3, 3, 1), b_inv));
}

TEST_CASE("compatibility fixtures", "[blockops]") {
    const auto r = compatibility(independence_fixture());
    CHECK(r.k_right);
    CHECK_FALSE(r.k_schur);
    CHECK(r.kt_right);
    CHECK_FALSE(r.kt_schur);

    // A = 0 gives (I - A A+)K = K, so only the A-form applies.
    const auto p = compatibility(pendant_system(cycle_graph(3), 2));
    CHECK(p.ab_compatible());
    CHECK_FALSE(p.kt_right);
    CHECK(p.kt_schur);

    const BlockSystem zero_k(adjacency(path_graph(3)), adjacency(path_graph(2)), RatMatrix::zeros(3, 2));
    CHECK(compatibility(zero_k).ab_compatible());
    CHECK(compatibility(zero_k).ba_compatible());
    CHECK(theo1_identities(zero_k) == std::array<bool, 3>{true, true, true});

    // A star split hub/leaves is never compatible: B = 0 forces K(I - B+B) = K.
    CHECK_FALSE(compatibility(star_blocks(5)).k_right);
}

TEST_CASE("Banachiewicz-Schur assembly", "[blockops]") {
    const Graph k2 = complete_graph(2);
    const auto sys = pendant_system(k2, 2);
    const RatMatrix expected = pendant_vertices_pinv(k2, 2);
    CHECK(banachiewicz_schur(sys, Block::A) == expected);
    CHECK_THROWS_AS(banachiewicz_schur(sys, Block::B), IncompatibleBlocks);
    CHECK(banachiewicz_schur(sys) == expected);
    CHECK(expected * Rational(4) == RatMatrix{{-0, -1, 0, -1, 2, 0},
                                              {-1, 0, -1, 0, 0, 2},
                                              {0, -1, 0, -1, 2, 0},
                                              {-1, 0, -1, 0, 0, 2},
                                              {2, 0, 2, 0, 0, 0},
                                              {0, 2, 0, 2, 0, 0}});
    CHECK(moore_penrose_identities(sys.assemble(), expected).all());
    CHECK_THROWS_AS(banachiewicz_schur(independence_fixture(), Block::A), IncompatibleBlocks);
    CHECK_THROWS_AS(banachiewicz_schur(star_blocks(5)), IncompatibleBlocks);
    CHECK_THROWS_AS(theo1_identities(pendant_system(k2, 1)), IncompatibleBlocks);
    CHECK_THROWS_AS(theo1_identities(independence_fixture()), IncompatibleBlocks);
}

TEST_CASE("random census splits", "[blockops]") {
    const auto graphs = corpus::graphs(2, 7);
    std::mt19937_64 rng(17);
    std::size_t compatible = 0, incompatible = 0;
    for (int t = 0; t < 300; ++t) {
        const Graph& g = graphs[rng() % graphs.size()];
        std::vector<std::size_t> first;
        for (std::size_t v = 0; v < g.order(); ++v)
            if (rng() & 1) first.push_back(v);
        if (first.empty() || first.size() == g.order()) continue;
        const auto sys = BlockSystem::split(adjacency(g), first);
        const auto c = compatibility(sys);
        const RatMatrix mp = pinv_exact(sys.assemble());
        if (c.ab_compatible()) {
            ++compatible;
            REQUIRE(banachiewicz_schur(sys, Block::A) == mp);
            // lower-left block of M M+ vanishes
            REQUIRE((sys.assemble() * mp).block(sys.n(), 0, sys.m(), sys.n()).is_zero());
        } else {
            ++incompatible;
        }
        if (c.ba_compatible()) REQUIRE(banachiewicz_schur(sys, Block::B) == mp);
        if (c.ab_compatible() && c.ba_compatible()) REQUIRE(theo1_identities(sys) == std::array<bool, 3>{true, true, true});
    }
    CHECK(compatible > 0);
    CHECK(incompatible > 0);
}

TEST_CASE("Schur invertibility", "[blockops]") {
    CHECK(schur_invertibility_check(pendant_system(complete_graph(2), 1)));
    const BlockSystem singular(RatMatrix::identity(2), RatMatrix::zeros(1, 1), RatMatrix::zeros(2, 1));
    CHECK_THROWS_AS(schur_invertibility_check(singular), PreconditionFailed);
    CHECK_THROWS_AS(schur_invertibility_check(star_blocks(3)), PreconditionFailed);
}

TEST_CASE("block sufficient condition for signability", "[blockops]") {
    CHECK(theo_si_sufficient(independence_fixture()).empty());
    CHECK(theo_si_sufficient(star_blocks(4)).empty());
    CHECK(theo_si_sufficient(pendant_system(complete_graph(2), 1)).empty());

    // Any witness returned must agree with the exhaustive oracle.
    const auto graphs = corpus::graphs(2, 6);
    std::mt19937_64 rng(23);
    std::size_t found = 0;
    for (int t = 0; t < 400; ++t) {
        const Graph& g = graphs[rng() % graphs.size()];
        std::vector<std::size_t> first;
        for (std::size_t v = 0; v < g.order(); ++v)
            if (rng() & 1) first.push_back(v);
        if (first.empty() || first.size() == g.order()) continue;
        const auto sys = BlockSystem::split(adjacency(g), first);
        const RatMatrix mp = pinv_exact(sys.assemble());
        for (const auto& w : theo_si_sufficient(sys)) {
            ++found;
            REQUIRE(all_entries_have_sign(apply_signature(mp, w.signature), w.target));
            REQUIRE(oracle::exhaustive_signature(mp, w.target).has_value());
        }
    }
    CHECK(found > 0);
}
