#include <sstream>

#include "doctest.h"
#include "ekr/decomp.hpp"

using namespace ekr;

namespace {

void check_partition(const DecompositionResult& d, std::size_t j) {
    CHECK(d.verified);
    CHECK(d.multiplicity == j);
    CHECK(verify_decomposition(d.ambient.ground().size(), d.blocks, j).ok);
}

}  // namespace

TEST_CASE("walecki") {
    for (std::size_t n = 3; n <= 11; n += 2) {
        auto d = walecki(n);
        CHECK(d.blocks.size() == (n - 1) / 2);
        check_partition(d, 1);
        for (const auto& b : d.blocks) {
            CHECK(b.count() == n);
            CHECK(is_hamiltonian_cycle(d.ambient, b));
        }
    }
    CHECK_THROWS_AS(walecki(6), Error);
}

TEST_CASE("circle factorization") {
    for (std::size_t n = 2; n <= 12; n += 2) {
        auto d = circle_factorization(n);
        CHECK(d.blocks.size() == n - 1);
        check_partition(d, 1);
        for (const auto& b : d.blocks) {
            CHECK(b.count() == n / 2);
            CHECK(is_perfect_matching(d.ambient, b));
        }
    }
    CHECK_THROWS_AS(circle_factorization(5), Error);
}

TEST_CASE("bipartite shift matchings") {
    for (std::size_t n : {1, 3, 4}) {
        auto d = bipartite_shift_matchings(n);
        CHECK(d.blocks.size() == n);
        check_partition(d, 1);
        for (const auto& b : d.blocks) CHECK(is_perfect_matching(d.ambient, b));
    }
    auto d = bipartite_shift_matchings(3);
    auto a = d.ambient;
    CHECK(d.blocks[1].test(a.edge_index({0, 3 + 1})));
    CHECK(d.blocks[1].test(a.edge_index({2, 3 + 0})));
}

TEST_CASE("consecutive unions") {
    for (std::size_t n : {4, 6, 8}) {
        auto d = consecutive_unions(circle_factorization(n), true);
        CHECK(d.blocks.size() == n - 1);
        check_partition(d, 2);
        for (const auto& b : d.blocks) CHECK(is_hamiltonian_cycle(d.ambient, b));
    }
    for (std::size_t n = 3; n <= 8; ++n) {
        auto d = consecutive_unions(bipartite_shift_matchings(n), true);
        CHECK(d.blocks.size() == n);
        check_partition(d, 2);
    }
    CHECK_THROWS_AS(consecutive_unions(bipartite_shift_matchings(2), true), Error);
    CHECK_THROWS_AS(consecutive_unions(walecki(5), true), Error);
}

TEST_CASE("hamiltonicity and matching predicates") {
    auto k4 = AmbientGraph::complete(4);
    auto e = [&](std::size_t u, std::size_t v) { return k4.edge_index({u, v}); };
    CHECK(is_hamiltonian_cycle(k4, Subset::from_indices(6, {e(0, 1), e(1, 2), e(2, 3), e(0, 3)})));
    CHECK_FALSE(is_hamiltonian_cycle(k4, Subset::from_indices(6, {e(0, 1), e(1, 2), e(0, 2)})));
    CHECK(is_perfect_matching(k4, Subset::from_indices(6, {e(0, 1), e(2, 3)})));
    CHECK_FALSE(is_perfect_matching(k4, Subset::from_indices(6, {e(0, 1), e(1, 2)})));
    auto k6 = AmbientGraph::complete(6);
    auto f = [&](std::size_t u, std::size_t v) { return k6.edge_index({u, v}); };
    // two disjoint triangles are 2-regular and spanning but not one cycle
    CHECK_FALSE(is_hamiltonian_cycle(k6, Subset::from_indices(15, {f(0, 1), f(1, 2), f(0, 2), f(3, 4), f(4, 5), f(3, 5)})));
}

TEST_CASE("verify_decomposition reports the first violation") {
    auto k4 = AmbientGraph::complete(4);
    auto e = [&](std::size_t u, std::size_t v) { return k4.edge_index({u, v}); };
    std::vector<Subset> blocks{Subset::from_indices(6, {e(0, 1), e(1, 2), e(0, 2)}),
                               Subset::from_indices(6, {e(0, 1), e(1, 3), e(0, 3)})};
    auto c = verify_decomposition(6, blocks, 1);
    CHECK_FALSE(c.ok);
    CHECK(c.element == e(0, 1));
    CHECK(c.count == 2);
}

TEST_CASE("exact cover") {
    auto k9 = exact_cover_decomposition(AmbientGraph::complete(9), PatternGraph::cycle(4));
    CHECK(k9.outcome == DecompositionOutcome::found);
    CHECK(k9.blocks.size() == 9);
    check_partition(k9, 1);
    for (const auto& b : k9.blocks) CHECK(b.count() == 4);
    auto k7 = exact_cover_decomposition(AmbientGraph::complete(7), PatternGraph::builtin("triangle"));
    CHECK(k7.blocks.size() == 7);
    check_partition(k7, 1);
    CHECK_THROWS_AS(exact_cover_decomposition(AmbientGraph::complete(4), PatternGraph::cycle(4)), NecessaryConditionFails);
    auto paths = exact_cover_decomposition(AmbientGraph::complete(5), PatternGraph::builtin("p3"));
    CHECK(paths.outcome == DecompositionOutcome::found);
    CHECK(paths.blocks.size() == 5);
    auto k4 = exact_cover_decomposition(AmbientGraph::complete(4), PatternGraph::builtin("triangle"), 1000);
    CHECK(k4.outcome == DecompositionOutcome::none_exists);  // 3 | 6, yet any two triangles of K_4 share an edge
}

TEST_CASE("decomposition file round trip") {
    auto d = walecki(7);
    std::ostringstream os;
    write_decomposition(os, d);
    CHECK(os.str().rfind("j=1\n", 0) == 0);
    std::istringstream in(os.str());
    auto [j, fam] = read_decomposition(in);
    CHECK(j == 1);
    CHECK(fam.size() == 3);
    std::istringstream bad("k=1\n");
    CHECK_THROWS_AS(read_decomposition(bad), Error);
}
