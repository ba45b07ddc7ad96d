#include "doctest.h"
#include "ekr/families.hpp"
#include "ekr/report.hpp"

using namespace ekr;

TEST_CASE("member labels use ground labels") {
    auto tri = k_cycles_complete(4, 3);
    auto labels = member_labels(tri.family, {0});
    REQUIRE(labels.size() == 1);
    CHECK(labels[0] == format_subset(tri.family.member(0), tri.family.ground()));
    CHECK(labels[0].find("0-1") != std::string::npos);
}

TEST_CASE("EKR verdict JSON") {
    auto f = k_subsets(6, 3);
    auto v = check_strong_ekr(f, IntersectionRule::element(1));
    auto j = to_json(v, f);
    CHECK(j["status"] == "EkrNotStrong");
    CHECK(j["star_size"] == 10);
    CHECK(j["max_size"] == 10);
    CHECK(j["non_star_maximum"].size() == 10);
    CHECK(j["non_star_maximum"][0].is_string());
    // deterministic: identical payload on a rerun
    CHECK(to_json(check_strong_ekr(f, IntersectionRule::element(1)), f).dump() == j.dump());
    auto keys = std::vector<std::string>{};
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys.front() == "status");
}

TEST_CASE("chain and counting JSON") {
    auto rel = inclusion_relation(k_matchings(AmbientGraph::complete(5), 2), k_cycles_complete(5, 5).family);
    auto e1 = IntersectionRule::element(1);
    auto j = to_json(check_ekr_chain(rel, e1));
    CHECK(j["is_chain"] == true);
    CHECK_FALSE(j.contains("is_special"));
    CHECK(j["fiber_size"] == 5);
    auto c = to_json(check_counting_identities(rel, e1));
    CHECK(c["all_hold"] == true);
    CHECK(c["checks"].size() > 0);
    CountingReport frac;
    frac.checks.push_back({"i", "a=0", 3, 7, 2, false});
    CHECK(to_json(frac)["checks"][0]["rhs"] == "7/2");
}

TEST_CASE("balanced and decomposition JSON") {
    auto k5 = AmbientGraph::complete(5);
    auto f = k_cycles_complete(5, 5).family;
    std::vector<std::size_t> cover;
    for (const auto& b : walecki(5).blocks) cover.push_back(*f.find(b));
    auto j = to_json(check_g_balanced(sym_vertices(k5), f, cover, 1, IntersectionRule::element(1)), f, cover);
    CHECK(j["passed"] == true);
    CHECK(j["r"] == 2);
    CHECK_FALSE(j.contains("multiplicity_witness"));
    auto d = to_json(walecki(5));
    CHECK(d["ambient"] == "Kn:5");
    CHECK(d["outcome"] == "constructed");
    CHECK(d["block_count"] == 2);
    CHECK(to_string(DecompositionOutcome::none_exists) == "none_exists");
}
