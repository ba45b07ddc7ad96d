#include "ekr/decomp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace ekr {

CoverCheck verify_decomposition(std::size_t ground_size, std::span<const Subset> blocks, std::size_t j) {
    std::vector<std::size_t> count(ground_size, 0);
    for (const auto& b : blocks) {
        if (b.universe_size() != ground_size) throw Error("universe mismatch");
        for (auto e : b.indices()) ++count[e];
    }
    CoverCheck c;
    for (std::size_t e = 0; e < ground_size; ++e)
        if (count[e] != j) {
            c.element = e;
            c.count = count[e];
            return c;
        }
    c.ok = true;
    return c;
}

bool is_hamiltonian_cycle(const AmbientGraph& ambient, const Subset& block) {
    if (ambient.uniformity() != 2) return false;
    const auto nv = ambient.vertex_count();
    auto edges = block.indices();
    if (edges.size() != nv || nv < 3) return false;
    std::vector<std::vector<std::size_t>> adj(nv);
    for (auto e : edges) {
        const auto& vs = ambient.edge_vertices(e);
        adj[vs[0]].push_back(vs[1]);
        adj[vs[1]].push_back(vs[0]);
    }
    for (const auto& a : adj)
        if (a.size() != 2) return false;
    // walk the cycle from vertex 0 and count the steps until we return
    std::size_t prev = 0, cur = adj[0][0], steps = 1;
    while (cur != 0) {
        auto next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        if (++steps > nv) return false;
    }
    return steps == nv;
}

bool is_perfect_matching(const AmbientGraph& ambient, const Subset& block) {
    if (ambient.uniformity() != 2) return false;
    std::vector<char> hit(ambient.vertex_count(), 0);
    for (auto e : block.indices())
        for (auto v : ambient.edge_vertices(e)) {
            if (hit[v]) return false;
            hit[v] = 1;
        }
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

namespace {

DecompositionResult finish(AmbientGraph ambient, std::vector<Subset> blocks, std::size_t j) {
    DecompositionResult r{std::move(ambient), std::move(blocks), j, false, DecompositionOutcome::constructed, 0};
    r.verified = verify_decomposition(r.ambient.ground().size(), r.blocks, j).ok;
    return r;
}

}  // namespace

DecompositionResult walecki(std::size_t n) {
    if (n < 3 || n % 2 == 0) throw Error("walecki needs an odd n >= 3");
    auto g = AmbientGraph::complete(n);
    const std::size_t m = n - 1;  // vertices 0..m-1 on a circle, vertex m in the centre
    // zig-zag path 0, 1, m-1, 2, m-2, ... over Z_m
    std::vector<std::size_t> zigzag{0};
    for (std::size_t s = 1; zigzag.size() < m; ++s) {
        zigzag.push_back(s);
        if (zigzag.size() < m) zigzag.push_back(m - s);
    }
    std::vector<Subset> blocks;
    for (std::size_t rot = 0; rot < m / 2; ++rot) {
        Subset c(g.ground().size());
        std::vector<std::size_t> walk{m};
        for (auto z : zigzag) walk.push_back((z + rot) % m);
        for (std::size_t i = 0; i < walk.size(); ++i) c.set(g.edge_index({walk[i], walk[(i + 1) % walk.size()]}));
        if (!is_hamiltonian_cycle(g, c)) throw Error("walecki block " + std::to_string(rot) + " is not Hamiltonian");
        blocks.push_back(std::move(c));
    }
    auto r = finish(std::move(g), std::move(blocks), 1);
    if (!r.verified) throw Error("walecki blocks do not partition the edges");
    return r;
}

DecompositionResult circle_factorization(std::size_t n) {
    if (n < 2 || n % 2 != 0) throw Error("circle_factorization needs an even n >= 2");
    auto g = AmbientGraph::complete(n);
    const std::size_t m = n - 1;  // rotate 0..m-1 around the fixed vertex m
    std::vector<Subset> blocks;
    for (std::size_t i = 0; i < m; ++i) {
        Subset f(g.ground().size());
        f.set(g.edge_index({i, m}));
        for (std::size_t d = 1; d <= (n - 2) / 2; ++d) f.set(g.edge_index({(i + d) % m, (i + m - d) % m}));
        blocks.push_back(std::move(f));
    }
    auto r = finish(std::move(g), std::move(blocks), 1);
    if (!r.verified) throw Error("circle factors do not partition the edges");
    return r;
}

DecompositionResult bipartite_shift_matchings(std::size_t n) {
    if (n < 1) throw Error("bipartite_shift_matchings needs n >= 1");
    auto g = AmbientGraph::complete_bipartite(n, n);
    std::vector<Subset> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        Subset f(g.ground().size());
        for (std::size_t j = 0; j < n; ++j) f.set(j * n + (j + i) % n);
        blocks.push_back(std::move(f));
    }
    return finish(std::move(g), std::move(blocks), 1);
}

DecompositionResult consecutive_unions(const DecompositionResult& factors, bool wrap) {
    if (factors.multiplicity != 1 || !factors.verified) throw Error("consecutive_unions needs a verified partition");
    for (std::size_t i = 0; i < factors.blocks.size(); ++i)
        if (!is_perfect_matching(factors.ambient, factors.blocks[i]))
            throw Error("factor " + std::to_string(i) + " is not a perfect matching");
    const auto r = factors.blocks.size();
    const std::size_t count = wrap ? r : (r == 0 ? 0 : r - 1);
    std::vector<Subset> blocks;
    for (std::size_t i = 0; i < count; ++i) {
        auto next = (i + 1) % r;
        auto c = factors.blocks[i] | factors.blocks[next];
        if (!is_hamiltonian_cycle(factors.ambient, c))
            throw Error("union of factors " + std::to_string(i) + " and " + std::to_string(next) +
                        " is not a Hamiltonian cycle");
        for (std::size_t p = 0; p < blocks.size(); ++p)
            if (blocks[p] == c)
                throw Error("unions " + std::to_string(p) + " and " + std::to_string(i) + " are the same cycle");
        blocks.push_back(std::move(c));
    }
    return finish(factors.ambient, std::move(blocks), 2);
}

DecompositionResult exact_cover_decomposition(const AmbientGraph& ambient, const PatternGraph& pattern,
                                              std::uint64_t budget) {
    const auto n = ambient.ground().size();
    if (pattern.edge_count() == 0 || n % pattern.edge_count() != 0)
        throw NecessaryConditionFails("necessary condition fails: " + std::to_string(pattern.edge_count()) +
                                      " does not divide " + std::to_string(n));
    auto copies = h_copies(ambient, pattern);
    const auto& cand = copies.members();

    std::vector<std::vector<std::size_t>> containing(n);
    for (std::size_t c = 0; c < cand.size(); ++c)
        for (auto e : cand[c].indices()) containing[e].push_back(c);

    Subset covered(n);
    std::vector<std::size_t> chosen;
    std::uint64_t nodes = 0;

    auto disjoint = [&](std::size_t c) { return intersection_size(cand[c], covered) == 0; };
    auto rec = [&](auto&& self) -> bool {
        if (++nodes > budget) throw BudgetExhausted(nodes);
        std::optional<std::size_t> pick;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t e = 0; e < n; ++e) {
            if (covered.test(e)) continue;
            std::size_t k = 0;
            for (auto c : containing[e])
                if (disjoint(c) && ++k >= fewest) break;
            if (k < fewest) {
                fewest = k;
                pick = e;
                if (k == 0) return false;
            }
        }
        if (!pick) return true;
        for (auto c : containing[*pick]) {
            if (!disjoint(c)) continue;
            chosen.push_back(c);
            covered = covered | cand[c];
            if (self(self)) return true;
            for (auto e : cand[c].indices()) covered.reset(e);
            chosen.pop_back();
        }
        return false;
    };

    DecompositionResult r{ambient, {}, 1, false, DecompositionOutcome::none_exists, 0};
    if (rec(rec)) {
        for (auto c : chosen) r.blocks.push_back(cand[c]);
        r.outcome = DecompositionOutcome::found;
        r.verified = verify_decomposition(n, r.blocks, 1).ok;
    }
    r.node_count = nodes;
    return r;
}

void write_decomposition(std::ostream& os, const DecompositionResult& result) {
    os << "j=" << result.multiplicity << '\n';
    write_fam(os, canonicalize(result.blocks, result.ambient.ground()));
}

std::pair<std::size_t, SetFamily> read_decomposition(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("j=", 0) != 0) throw Error("decomposition file lacks a 'j=' header");
    std::size_t j = 0;
    try {
        j = std::stoul(header.substr(2));
    } catch (const std::exception&) {
        throw Error("malformed 'j=' header");
    }
    return {j, read_fam(is)};
}

}  // namespace ekr
