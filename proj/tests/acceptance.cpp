#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ekr/chains.hpp"
#include "ekr/decomp.hpp"
#include "ekr/families.hpp"
#include "ekr/gbalanced.hpp"
#include "ekr/verify.hpp"
#include "oracle.hpp"

using namespace ekr;

namespace {

const auto e1 = IntersectionRule::element(1);

// Collects check results for one criterion; every failed check is printed.
class Criterion {
public:
    void check(bool ok, const std::string& what) {
        if (!ok) {
            ok_ = false;
            std::cout << "    failed: " << what << "\n";
        }
    }
    void info(const std::string& line) { std::cout << "    " << line << "\n"; }
    bool ok() const { return ok_; }

private:
    bool ok_ = true;
};

std::string verdict_line(const std::string& name, const EkrVerdict& v) {
    std::ostringstream os;
    os << name << ": " << to_string(v.status) << ", star " << v.star_size << ", max " << v.max_size;
    return os.str();
}

bool is_star(const SetFamily& f, const std::vector<std::size_t>& indices) {
    for (std::size_t x = 0; x < f.ground().size(); ++x) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.member(i).test(x)) s.push_back(i);
        if (s == indices) return true;
    }
    return false;
}

RelationFamily t2_chain(std::size_t n) {
    return inclusion_relation(k_matchings(AmbientGraph::complete(n), 2), k_cycles_complete(n, n).family);
}

RelationFamily biclique_chain(std::size_t n) {
    return inclusion_relation(cycles_bipartite(n, 4).family, bicliques(n, 2).family);
}

std::string chain_line(const std::string& name, const ChainVerdict& v) {
    std::string s = name + ": is_chain " + (v.is_chain ? "true" : "false");
    if (v.special_checked) s += std::string(", is_special ") + (v.is_special ? "true" : "false");
    for (const auto& f : v.failures) s += " [" + f.condition + ": " + f.witness + "]";
    return s;
}

std::vector<std::size_t> cover_of(const SetFamily& f, const DecompositionResult& d) {
    std::vector<std::size_t> out;
    for (const auto& b : d.blocks) out.push_back(*f.find(b));
    return out;
}

void criterion1(Criterion& c) {
    for (std::size_t k = 2; 2 * k <= 10; ++k)
        for (std::size_t n = 2 * k; n <= 10; ++n) {
            auto f = k_subsets(n, k);
            auto label = "ksub(" + std::to_string(n) + "," + std::to_string(k) + ")";
            auto v = check_strong_ekr(f, e1);
            c.check(v.max_size == binomial(n - 1, k - 1), label + " max " + std::to_string(v.max_size));
            if (n > 2 * k) {
                c.check(v.status == EkrStatus::StrongEKR, label + " " + to_string(v.status));
            } else {
                c.check(v.status == EkrStatus::EkrNotStrong, label + " " + to_string(v.status));
                c.check(v.non_star_maximum && is_intersecting(f, *v.non_star_maximum, e1) &&
                            v.non_star_maximum->size() == binomial(n - 1, k - 1) && !is_star(f, *v.non_star_maximum),
                        label + " non-star witness");
            }
        }
}

void criterion2(Criterion& c) {
    auto f = k_subsets(7, 3);
    auto t2 = IntersectionRule::element(2);
    auto v = check_strong_ekr(f, t2);
    c.info(verdict_line("ksub(7,3) t=2", v));
    c.check(v.max_size == 5, "max");
    c.check(v.status == EkrStatus::StrongEKR && v.exhaustive, "strong");
    auto stars = t_stars(f, t2);
    for (const auto& w : v.witnesses) {
        bool found = false;
        for (const auto& s : stars) found = found || s.members == w;
        c.check(found, "every maximum is a 2-star");
    }
    c.check(v.witnesses.size() == 21, "21 maxima (one per pair)");
}

void criterion3(Criterion& c) {
    for (std::size_t n : {3, 4, 5}) {
        auto f = perfect_matchings_bipartite(n).family;
        auto name = "pm(" + std::to_string(n) + ")";
        if (n == 3) {
            auto v = check_ekr(f, e1);
            c.info(verdict_line(name, v));
            c.check(v.max_size == 2, name + " max");
        } else {
            auto v = check_strong_ekr(f, e1);
            c.info(verdict_line(name, v));
            c.check(v.max_size == oracle::factorial(n - 1), name + " max");
            c.check(v.status == EkrStatus::StrongEKR, name + " all maxima are stars");
        }
    }
}

void criterion4(Criterion& c) {
    auto a = check_ekr(k_cycles_complete(6, 3).family, e1);
    c.info(verdict_line("cyc(6,3)", a));
    c.check(a.status == EkrStatus::EKR && a.max_size == 4, "cyc(6,3) EKR 4");
    auto b = check_strong_ekr(k_cycles_complete(7, 3).family, e1);
    c.info(verdict_line("cyc(7,3)", b));
    c.check(b.status == EkrStatus::StrongEKR && b.max_size == 5, "cyc(7,3) StrongEKR 5");
}

void criterion5(Criterion& c) {
    for (std::size_t n : {3, 4, 5}) {
        auto f = cycles_bipartite(n, 4).family;
        auto name = "bcyc(" + std::to_string(n) + ",4)";
        std::vector<std::size_t> key{0};
        auto oracle_star = oracle::star_count(f.members(), key);
        c.check(oracle_star == (n - 1) * (n - 1), name + " oracle star " + std::to_string(oracle_star));
        auto v = check_ekr(f, e1);
        c.info(verdict_line(name, v));
        c.check(v.star_size == oracle_star, name + " star value matches oracle");
        c.check(v.status == EkrStatus::EKR || v.status == EkrStatus::StrongEKR, name + " EKR");
    }
    auto s3 = check_strong_ekr(cycles_bipartite(3, 4).family, e1);
    c.info(verdict_line("bcyc(3,4) strong", s3));
    c.check(s3.status == EkrStatus::StrongEKR, "bcyc(3,4) StrongEKR");
    auto s5 = check_strong_ekr(cycles_bipartite(5, 4).family, e1);
    c.info(verdict_line("bcyc(5,4) strong (first n > 2k)", s5));
    if (s3.status == EkrStatus::NotEKR)
        c.info("n = 3 is below n >= 2k = 4: all 9 four-cycles of K_{3,3} pairwise share an edge");
}

void criterion6(Criterion& c) {
    for (std::size_t n : {5, 6, 7}) {
        auto v = check_ekr_chain(t2_chain(n), e1);
        c.info(chain_line("T_2 chain n=" + std::to_string(n), v));
        c.check(v.is_chain, "T_2 chain n=" + std::to_string(n));
    }
    auto b3 = check_ekr_chain(biclique_chain(3), e1);
    c.info(chain_line("biclique chain n=3", b3));
    c.check(b3.is_chain, "biclique chain n=3");
    auto b5 = check_special_chain(biclique_chain(5), e1);
    c.info(chain_line("biclique chain n=5", b5));
    c.check(b5.is_chain && b5.is_special, "biclique chain n=5 special");
    auto b4 = check_ekr_chain(biclique_chain(4), e1);
    c.info(chain_line("biclique chain n=4 (n = 2k)", b4));
}

void criterion7(Criterion& c) {
    for (std::size_t n : {5, 6, 7}) {
        auto rel = t2_chain(n);
        if (!check_ekr_chain(rel, e1).is_chain) continue;
        auto v = check_ekr(rel.lower(), e1);
        c.info(verdict_line("2-matchings of K_" + std::to_string(n), v));
        c.check(v.status == EkrStatus::EKR, "lower family of T_2 chain n=" + std::to_string(n));
    }
    for (std::size_t n : {3, 5}) {
        auto rel = biclique_chain(n);
        auto chain = check_special_chain(rel, e1);
        auto v = chain.is_special ? check_strong_ekr(rel.lower(), e1) : check_ekr(rel.lower(), e1);
        auto name = "bcyc(" + std::to_string(n) + ",4)";
        c.info(verdict_line(name, v) + (chain.is_chain ? "" : " (chain did not pass; no claim)"));
        if (!chain.is_chain) continue;
        c.check(v.status == EkrStatus::EKR || v.status == EkrStatus::StrongEKR, name + " EKR");
        if (chain.is_special) c.check(v.status == EkrStatus::StrongEKR, name + " StrongEKR");
    }
}

void criterion8(Criterion& c) {
    auto k5 = AmbientGraph::complete(5);
    auto f5 = k_cycles_complete(5, 5).family;
    auto v5 = check_g_balanced(sym_vertices(k5), f5, cover_of(f5, walecki(5)), 1, e1);
    auto d5 = check_ekr(f5, e1);
    c.info(verdict_line("cyc(5,5)", d5));
    c.check(v5.passed(), "cyc(5,5) walecki j=1 balanced");
    c.check(d5.status == EkrStatus::EKR, "cyc(5,5) direct EKR");

    auto k6 = AmbientGraph::complete(6);
    auto f6 = k_cycles_complete(6, 6).family;
    auto v6 = check_g_balanced(sym_vertices(k6), f6, cover_of(f6, consecutive_unions(circle_factorization(6), true)), 2, e1);
    auto d6 = check_ekr(f6, e1);
    c.info(verdict_line("cyc(6,6)", d6));
    c.check(v6.passed(), "cyc(6,6) unions j=2 balanced");
    c.check(d6.status == EkrStatus::EKR && d6.max_size * 5 == f6.size() * 2, "cyc(6,6) direct EKR, |F|*j/r");

    auto pm = perfect_matchings_bipartite(4);
    auto vp = check_g_balanced(sym_bipartite(pm.ambient), pm.family, cover_of(pm.family, bipartite_shift_matchings(4)), 1, e1);
    auto dp = check_ekr(pm.family, e1);
    c.info(verdict_line("pm(4)", dp));
    c.check(vp.passed(), "pm(4) shift j=1 balanced");
    c.check(dp.status == EkrStatus::EKR && dp.max_size == 6, "pm(4) direct EKR");
}

void criterion9(Criterion& c) {
    auto run = [&](const std::string& name, const RelationFamily& rel) {
        auto r = check_counting_identities(rel, e1);
        std::size_t failed = 0;
        for (const auto& x : r.checks) failed += !x.holds;
        c.info(name + ": " + std::to_string(r.checks.size()) + " identity checks, " + std::to_string(failed) + " failed");
        return r;
    };
    for (std::size_t n : {5, 6, 7}) {
        auto r = run("T_2 chain n=" + std::to_string(n), t2_chain(n));
        c.check(r.all_hold, "T_2 chain n=" + std::to_string(n));
    }
    auto b5 = run("biclique chain n=5", biclique_chain(5));
    c.check(b5.all_hold, "biclique chain n=5");
    auto b3 = run("biclique chain n=3 (not a chain, informational)", biclique_chain(3));
    for (const auto& x : b3.checks)
        if (!x.holds) {
            c.info("  first failure: (" + x.identity + ") " + x.probe + ": " + std::to_string(x.lhs) + " vs " +
                   std::to_string(x.rhs_num) + "/" + std::to_string(x.rhs_den));
            break;
        }
}

void criterion10(Criterion& c) {
    for (std::size_t n = 3; n <= 11; n += 2) {
        auto d = walecki(n);
        bool ok = d.blocks.size() == (n - 1) / 2 && verify_decomposition(d.ambient.ground().size(), d.blocks, 1).ok;
        for (const auto& b : d.blocks) ok = ok && is_hamiltonian_cycle(d.ambient, b);
        c.check(ok, "walecki(" + std::to_string(n) + ")");
    }
    for (std::size_t n = 2; n <= 12; n += 2) {
        auto d = circle_factorization(n);
        bool ok = d.blocks.size() == n - 1 && verify_decomposition(d.ambient.ground().size(), d.blocks, 1).ok;
        for (const auto& b : d.blocks) ok = ok && is_perfect_matching(d.ambient, b);
        c.check(ok, "circle_factorization(" + std::to_string(n) + ")");
    }
    auto unions_ok = [](const DecompositionResult& d) {
        bool ok = verify_decomposition(d.ambient.ground().size(), d.blocks, 2).ok;
        for (const auto& b : d.blocks) ok = ok && is_hamiltonian_cycle(d.ambient, b);
        return ok;
    };
    for (std::size_t n = 4; n <= 8; n += 2) c.check(unions_ok(consecutive_unions(circle_factorization(n), true)), "unions K_" + std::to_string(n));
    for (std::size_t n = 3; n <= 8; ++n)
        c.check(unions_ok(consecutive_unions(bipartite_shift_matchings(n), true)), "unions K_{n,n} n=" + std::to_string(n));
    auto k9 = exact_cover_decomposition(AmbientGraph::complete(9), PatternGraph::cycle(4));
    c.info("K_9 / C_4: " + std::to_string(k9.blocks.size()) + " blocks, " + std::to_string(k9.node_count) + " nodes");
    bool cycles = true;
    for (const auto& b : k9.blocks) {
        std::vector<std::size_t> deg(9, 0);
        for (auto e : b.indices())
            for (auto v : k9.ambient.edge_vertices(e)) ++deg[v];
        std::size_t on = 0;
        for (auto d : deg) {
            cycles = cycles && (d == 0 || d == 2);
            on += d == 2;
        }
        cycles = cycles && on == 4 && b.count() == 4;
    }
    c.check(k9.blocks.size() == 9 && verify_decomposition(36, k9.blocks, 1).ok && cycles, "K_9 / C_4");
    bool refused = false;
    try {
        exact_cover_decomposition(AmbientGraph::complete(4), PatternGraph::cycle(4));
    } catch (const NecessaryConditionFails& e) {
        refused = true;
        c.info(std::string("K_4 / C_4: ") + e.what());
    }
    c.check(refused, "K_4 / C_4 divisibility error");
}

void criterion11(Criterion& c) {
    auto s8 = separated_k_subsets(8, 3);
    auto a = check_strong_ekr(s8, e1);
    c.info(verdict_line("sep(8,3)", a));
    c.check(a.status == EkrStatus::EkrNotStrong && a.non_star_maximum && !is_star(s8, *a.non_star_maximum) &&
                is_intersecting(s8, *a.non_star_maximum, e1),
            "sep(8,3) EkrNotStrong with non-star maximum");
    auto b = check_strong_ekr(separated_k_subsets(9, 3), e1);
    c.info(verdict_line("sep(9,3)", b));
    c.check(b.status == EkrStatus::StrongEKR, "sep(9,3) StrongEKR");
}

// Deterministic families: member j of family i has size 1 + (i + 3j) mod s and colex rank
// (131 i + 977 j) mod C(n, size).
SetFamily oracle_family(std::size_t i) {
    std::size_t n = 4 + i % 9;
    std::size_t m = 6 + (i * 7) % 13;
    std::size_t s = std::min<std::size_t>(n - 1, 5);
    std::vector<Subset> members;
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t size = 1 + (i + 3 * j) % s;
        auto rank = (131 * i + 977 * j) % binomial(n, size);
        std::vector<std::size_t> idx(size);
        for (std::size_t p = size; p-- > 0;) {
            std::size_t v = p;
            while (binomial(v + 1, p + 1) <= rank) ++v;
            rank -= binomial(v, p + 1);
            idx[p] = v;
        }
        members.push_back(Subset::from_indices(n, idx));
    }
    return canonicalize(members, GroundSet::points(n));
}

void criterion12(Criterion& c) {
    std::size_t agreed = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        auto f = oracle_family(i);
        std::size_t t = 1 + i % 2;
        auto rule = IntersectionRule::element(t);
        auto truth = oracle::brute_maxima(f.members(), t);
        auto e = enumerate_maximum(f, rule);
        auto best = max_intersecting(f, rule);
        std::set<std::vector<std::size_t>> got(e.witnesses.begin(), e.witnesses.end());
        bool ok = e.size == truth.size && best.size == truth.size && got == truth.sets && e.exhaustive &&
                  truth.sets.count(best.witness);
        c.check(ok, "family " + std::to_string(i) + " (" + std::to_string(f.size()) + " members)");
        agreed += ok;
    }
    c.info(std::to_string(agreed) + "/200 families agree with the 2^m scan");
}

void criterion13(Criterion& c) {
    auto k6 = AmbientGraph::complete(6);
    auto copies = h_copies(k6, PatternGraph::builtin("triangle"));
    c.check(copies == k_cycles_complete(6, 3).family, "h_copies(K_6, triangle) equals the triangle family");
    auto a = check_strong_ekr(copies, e1);
    auto b = check_strong_ekr(k_cycles_complete(6, 3).family, e1);
    c.info(verdict_line("h_copies(K_6, triangle)", a));
    c.check(a.status == b.status && a.max_size == 4 && a.star_size == 4, "matches criterion 4 at n = 6");
    auto c7 = h_copies(AmbientGraph::complete(7), PatternGraph::builtin("triangle"));
    auto v7 = check_strong_ekr(c7, e1);
    c.info(verdict_line("h_copies(K_7, triangle)", v7));
    c.check(v7.status == EkrStatus::StrongEKR && v7.max_size == 5, "matches criterion 4 at n = 7");
    auto chain = check_ekr_chain(inclusion_relation(c7, cliques_complete(7, 3).family), e1);
    c.info(chain_line("triangles -> 3-cliques of K_7", chain));
    c.check(chain.is_chain, "triangle chain");
    auto h = AmbientGraph::complete_uniform(6, 3);
    auto edges = h_copies(h, PatternGraph(3, {{0, 1, 2}}, 3));
    c.check(edges.size() == 20, "single 3-edge copies in K_6^(3)");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<void(Criterion&)>> criteria{criterion1, criterion2,  criterion3,  criterion4, criterion5,
                                                                criterion6, criterion7,  criterion8,  criterion9, criterion10,
                                                                criterion11, criterion12, criterion13};
    std::vector<std::size_t> which;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) which.push_back(std::strtoul(argv[i], nullptr, 10));
    } else {
        for (std::size_t i = 1; i <= criteria.size(); ++i) which.push_back(i);
    }
    bool all = true;
    for (auto n : which) {
        if (n < 1 || n > criteria.size()) {
            std::cerr << "no criterion " << n << "\n";
            return 1;
        }
        Criterion c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[n - 1](c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << n << ": " << (c.ok() ? "PASS" : "FAIL") << " (" << secs << " s)\n";
        all = all && c.ok();
    }
    return all ? 0 : 1;
}
