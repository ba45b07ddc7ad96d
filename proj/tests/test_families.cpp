#include <sstream>

#include "doctest.h"
#include "ekr/families.hpp"
#include "oracle.hpp"

using namespace ekr;

TEST_CASE("k_subsets") {
    CHECK(k_subsets(4, 2).size() == 6);
    CHECK(k_subsets(5, 5).size() == 1);
    CHECK(k_subsets(7, 3).size() == 35);
    CHECK(k_subsets(7, 3).uniform_size() == 3);
    CHECK_THROWS_AS(k_subsets(3, 4), Error);
}

TEST_CASE("separated_k_subsets against the filter oracle") {
    CHECK(separated_k_subsets(7, 2).size() == 14);
    CHECK(separated_k_subsets(6, 3).size() == 2);
    CHECK(separated_k_subsets(6, 1).size() == 6);
    CHECK(separated_k_subsets(8, 3).size() == 16);
    for (std::size_t n = 4; n <= 12; ++n)
        for (std::size_t k = 1; 2 * k <= n; ++k) CHECK(separated_k_subsets(n, k).size() == oracle::separated_count(n, k));
    CHECK_THROWS_AS(separated_k_subsets(5, 3), Error);
    auto sep = separated_k_subsets(9, 3);
    for (const auto& m : sep.members()) {
        auto idx = m.indices();
        for (std::size_t i = 0; i < idx.size(); ++i) CHECK(!m.test((idx[i] + 1) % 9));
    }
}

TEST_CASE("perfect matchings of K_{n,n}") {
    CHECK(perfect_matchings_bipartite(1).family.size() == 1);
    CHECK(perfect_matchings_bipartite(3).family.size() == 6);
    CHECK(perfect_matchings_bipartite(4).family.size() == 24);
    CHECK_THROWS_WITH_AS(perfect_matchings_bipartite(8, 1000), doctest::Contains("family too large"), Error);
}

TEST_CASE("k_matchings") {
    CHECK(k_matchings(AmbientGraph::complete(4), 2).size() == 3);
    CHECK(k_matchings(AmbientGraph::complete(5), 2).size() == 15);
    CHECK(k_matchings(AmbientGraph::complete_bipartite(2, 2), 2).size() == 2);
    for (std::size_t n = 2; n <= 9; ++n)
        for (std::size_t k = 1; 2 * k <= n; ++k)
            CHECK(k_matchings(AmbientGraph::complete(n), k).size() == oracle::matchings_kn(n, k));
    CHECK_THROWS_AS(k_matchings(AmbientGraph::complete(5), 3), Error);
}

TEST_CASE("cycles and cliques") {
    CHECK(k_cycles_complete(5, 3).family.size() == 10);
    CHECK(k_cycles_complete(5, 5).family.size() == 12);
    CHECK(k_cycles_complete(6, 4).family.size() == 45);
    for (std::size_t n = 3; n <= 8; ++n)
        for (std::size_t k = 3; k <= n && k <= 7; ++k) {
            auto cycles = k_cycles_complete(n, k).family.size();
            CHECK(cycles == oracle::cycles_kn(n, k));
            CHECK(cycles == cliques_complete(n, k).family.size() * oracle::factorial(k - 1) / 2);
        }
    CHECK(cycles_bipartite(2, 4).family.size() == 1);
    CHECK(cycles_bipartite(3, 4).family.size() == 9);
    CHECK(cycles_bipartite(3, 6).family.size() == 6);
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t k = 2; k <= n && k <= 4; ++k) {
            auto cycles = cycles_bipartite(n, 2 * k).family.size();
            CHECK(cycles == oracle::cycles_knn(n, k));
            CHECK(cycles == bicliques(n, k).family.size() * oracle::factorial(k - 1) * oracle::factorial(k) / 2);
        }
    CHECK_THROWS_AS(cycles_bipartite(3, 5), Error);
    CHECK(cliques_complete(5, 3).family.size() == 10);
    CHECK(cliques_complete(4, 4).family.size() == 1);
    CHECK(cliques_complete(6, 3).family.size() == 20);
    CHECK(bicliques(3, 2).family.size() == 9);
    CHECK(bicliques(2, 2).family.size() == 1);
    CHECK(bicliques(4, 2).family.size() == 36);
}

TEST_CASE("every generated cycle is a connected 2-regular edge set") {
    auto f = k_cycles_complete(6, 4);
    for (const auto& m : f.family.members()) {
        std::vector<std::size_t> deg(6, 0);
        for (auto e : m.indices())
            for (auto v : f.ambient.edge_vertices(e)) ++deg[v];
        std::size_t on = 0;
        for (auto d : deg) {
            CHECK((d == 0 || d == 2));
            on += d == 2;
        }
        CHECK(on == 4);
    }
}

TEST_CASE("h_copies") {
    CHECK(h_copies(AmbientGraph::complete(4), PatternGraph::builtin("triangle")).size() == 4);
    CHECK(h_copies(AmbientGraph::complete(5), PatternGraph::cycle(5)).size() == 12);
    CHECK(h_copies(AmbientGraph::complete_bipartite(3, 3), PatternGraph::matching(3)).size() == 6);
    // copies of C_k agree with the dedicated generator, member for member
    CHECK(h_copies(AmbientGraph::complete(6), PatternGraph::cycle(4)) == k_cycles_complete(6, 4).family);
    CHECK(h_copies(AmbientGraph::complete(7), PatternGraph::builtin("triangle")) == k_cycles_complete(7, 3).family);
    CHECK(h_copies(AmbientGraph::complete(6), PatternGraph::matching(2)) == k_matchings(AmbientGraph::complete(6), 2));
    CHECK(h_copies(AmbientGraph::complete_bipartite(4, 4), PatternGraph::cycle(4)) == cycles_bipartite(4, 4).family);
    CHECK(h_copies(AmbientGraph::complete(5), PatternGraph::path(3)).size() == 30);  // 5*4*3/2
    // a hypergraph pattern: one r-edge in K_6^(3) is every hyperedge
    CHECK(h_copies(AmbientGraph::complete_uniform(6, 3), PatternGraph(3, {{0, 1, 2}}, 3)).size() == 20);
    CHECK_THROWS_WITH_AS(h_copies(AmbientGraph::complete(5), PatternGraph(3, {{0, 1}})), "isolated vertices unsupported",
                         Error);
    CHECK_THROWS_WITH_AS(h_copies(AmbientGraph::complete(8), PatternGraph::cycle(8), 100), doctest::Contains("family too large"), Error);
}

TEST_CASE("pattern builtins and .pat round trip") {
    CHECK(PatternGraph::builtin("c4").edge_count() == 4);
    CHECK(PatternGraph::builtin("k4").edge_count() == 6);
    CHECK(PatternGraph::builtin("m3").vertex_count() == 6);
    CHECK(PatternGraph::builtin("p4").edge_count() == 3);
    CHECK(PatternGraph::builtin("edge").edge_count() == 1);
    CHECK_THROWS_AS(PatternGraph::builtin("q9"), Error);
    auto p = PatternGraph::complete_bipartite(2, 3);
    std::ostringstream os;
    write_pat(os, p);
    std::istringstream in(os.str());
    auto back = read_pat(in);
    CHECK(back.edges() == p.edges());
    CHECK(back.vertex_count() == 5);
    std::istringstream bad("3 1 2\n0 5\n");
    CHECK_THROWS_AS(read_pat(bad), Error);
}

TEST_CASE("family descriptors") {
    CHECK(generate_family("ksub:6,3").family.size() == 20);
    CHECK(generate_family("cyc:6,3").family.size() == 20);
    CHECK(generate_family("sep:8,3").family.size() == 16);
    CHECK(generate_family("pm:3").family.size() == 6);
    CHECK(generate_family("bcyc:3,4").family.size() == 9);
    CHECK(generate_family("clique:6,3").family.size() == 20);
    CHECK(generate_family("biclique:4,2").family.size() == 36);
    CHECK(generate_family("match:Kn:5,2").family.size() == 15);
    CHECK(generate_family("match:Knn:3,3,3").family.size() == 6);
    CHECK(generate_family("copies:Kn:5,triangle").family.size() == 10);
    CHECK(generate_family("cyc:6,3").ambient.has_value());
    CHECK_FALSE(generate_family("ksub:6,3").ambient.has_value());
    for (auto bad : {"ksub", "ksub:6", "nope:3", "cyc:6,x", "copies:Kn:5"}) CHECK_THROWS_AS(generate_family(bad), Error);
    CHECK_THROWS_WITH_AS(generate_family("ksub:20,10", 1000), doctest::Contains("family too large"), Error);
}
