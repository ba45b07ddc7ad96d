#include "ekr/gbalanced.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ekr {

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation inverse(const Permutation& p) {
    Permutation q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
    return q;
}

Permutation compose(const Permutation& first, const Permutation& second) {
    if (first.size() != second.size()) throw Error("permutation size mismatch");
    Permutation r(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
    return r;
}

GroupAction::GroupAction(GroundSet ground, std::vector<Permutation> generators)
    : ground_(std::move(ground)), generators_(std::move(generators)) {
    if (generators_.empty()) throw Error("group action needs at least one generator");
    const auto n = ground_.size();
    for (const auto& g : generators_) {
        if (g.size() != n) throw Error("generator has wrong length");
        std::vector<char> hit(n, 0);
        for (auto x : g) {
            if (x >= n || hit[x]) throw Error("generator is not a bijection");
            hit[x] = 1;
        }
    }
}

Permutation evaluate_word(const GroupAction& action, std::span<const WordLetter> word) {
    auto p = identity_permutation(action.ground().size());
    for (const auto& letter : word) {
        const auto& g = action.generators().at(letter.generator);
        p = compose(p, letter.inverse ? inverse(g) : g);
    }
    return p;
}

std::vector<std::size_t> orbit(const GroupAction& action, std::size_t seed) {
    const auto n = action.ground().size();
    if (seed >= n) throw Error("orbit seed out of range");
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> out{seed};
    seen[seed] = 1;
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : action.generators()) {
            auto y = g[out[head]];
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
            }
        }
    return out;
}

Subset act_on_subset(const Permutation& g, const Subset& member) {
    if (g.size() != member.universe_size()) throw Error("universe mismatch");
    Subset out(member.universe_size());
    for (auto i : member.indices()) out.set(g[i]);
    return out;
}

FamilyAction check_transitive_on_family(const GroupAction& action, const SetFamily& family) {
    if (action.ground().size() != family.ground().size())
        throw Error("group and family live on different ground sets");
    FamilyAction out;
    const auto& gens = action.generators();
    // image[g][i]: index of generator g applied to member i
    std::vector<std::vector<std::size_t>> image(gens.size(), std::vector<std::size_t>(family.size()));
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t i = 0; i < family.size(); ++i) {
            auto idx = family.find(act_on_subset(gens[g], family.member(i)));
            if (!idx) {
                out.escape = std::pair{i, g};
                return out;
            }
            image[g][i] = *idx;
        }
    out.closed = true;
    if (family.empty()) {
        out.transitive = true;
        return out;
    }
    std::vector<char> seen(family.size(), 0);
    std::vector<std::size_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (std::size_t g = 0; g < gens.size(); ++g) {
            auto y = image[g][queue[head]];
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    out.orbit_size = queue.size();
    out.transitive = queue.size() == family.size();
    return out;
}

BalancedVerdict check_g_balanced(const GroupAction& action, const SetFamily& family, std::span<const std::size_t> cover,
                                 std::size_t j, const IntersectionRule& rule, const SolverOptions& options) {
    if (j < 1) throw Error("j must be at least 1");
    for (auto d : cover)
        if (d >= family.size()) throw Error("cover index out of range");
    const auto n = family.ground().size();

    BalancedVerdict v;
    v.j = j;
    v.r = cover.size();
    v.transitive_on_ground = orbit(action, 0).size() == n;

    auto fa = check_transitive_on_family(action, family);
    v.family_closed = fa.closed;
    v.transitive_on_family = fa.transitive.value_or(false);

    std::vector<std::size_t> count(n, 0);
    for (auto d : cover)
        for (auto e : family.member(d).indices()) ++count[e];
    v.cover_multiplicity_ok = true;
    for (std::size_t e = 0; e < n; ++e)
        if (count[e] != j) {
            v.cover_multiplicity_ok = false;
            v.multiplicity_witness = std::pair{e, count[e]};
            break;
        }

    std::vector<Subset> blocks;
    blocks.reserve(cover.size());
    for (auto d : cover) blocks.push_back(family.member(d));
    if (!blocks.empty()) {
        auto ig = build_intersection_graph(blocks, rule);
        auto best = max_clique(ig.graph, options);
        v.cover_max_intersecting = best.size;
        if (best.size > j) v.clique_witness = best.witness;
    }
    v.cover_clique_ok = v.cover_max_intersecting <= j;
    return v;
}

std::vector<std::size_t> window_cover(std::span<const std::size_t> order, const SetFamily& family, std::size_t k) {
    const auto n = family.ground().size();
    if (order.size() != n) throw Error("ordering must list every ground element");
    std::vector<std::size_t> out;
    for (std::size_t start = 0; start < n; ++start) {
        Subset w(n);
        for (std::size_t d = 0; d < k; ++d) w.set(order[(start + d) % n]);
        auto idx = family.find(w);
        if (!idx) throw Error("window " + std::to_string(start) + " is not a member");
        out.push_back(*idx);
    }
    return out;
}

namespace {

std::vector<Permutation> symmetric_generators(std::size_t n) {
    std::vector<Permutation> gens;
    if (n < 2) return gens;
    auto swap01 = identity_permutation(n);
    std::swap(swap01[0], swap01[1]);
    gens.push_back(swap01);
    if (n > 2) {
        Permutation cycle(n);
        for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
        gens.push_back(cycle);
    }
    return gens;
}

/// Lift a permutation of ambient vertices to the edges.
Permutation lift(const AmbientGraph& g, const Permutation& vertex_perm) {
    const auto& ground = g.ground();
    Permutation p(ground.size());
    for (std::size_t e = 0; e < ground.size(); ++e) {
        auto vs = g.edge_vertices(e);
        for (auto& v : vs) v = vertex_perm[v];
        p[e] = g.edge_index(vs);
    }
    return p;
}

GroupAction finish(const GroundSet& ground, std::vector<Permutation> gens) {
    if (gens.empty()) gens.push_back(identity_permutation(ground.size()));
    return GroupAction(ground, std::move(gens));
}

}  // namespace

GroupAction sym_points(std::size_t n) {
    auto ground = GroundSet::points(n);
    return finish(ground, symmetric_generators(n));
}

GroupAction sym_vertices(const AmbientGraph& ambient) {
    if (ambient.kind() != AmbientKind::complete) throw Error("sym-vertices needs a complete graph ambient");
    std::vector<Permutation> gens;
    for (const auto& vp : symmetric_generators(ambient.vertex_count())) gens.push_back(lift(ambient, vp));
    return finish(ambient.ground(), std::move(gens));
}

GroupAction sym_hyper(const AmbientGraph& ambient) {
    if (ambient.kind() != AmbientKind::complete_uniform) throw Error("sym-hyper needs a complete uniform hypergraph");
    std::vector<Permutation> gens;
    for (const auto& vp : symmetric_generators(ambient.vertex_count())) gens.push_back(lift(ambient, vp));
    return finish(ambient.ground(), std::move(gens));
}

GroupAction sym_bipartite(const AmbientGraph& ambient) {
    if (ambient.kind() != AmbientKind::complete_bipartite) throw Error("sym-bipartite needs a complete bipartite ambient");
    const auto a = ambient.first(), b = ambient.second();
    std::vector<Permutation> gens;
    for (const auto& lp : symmetric_generators(a)) {
        auto vp = identity_permutation(a + b);
        for (std::size_t i = 0; i < a; ++i) vp[i] = lp[i];
        gens.push_back(lift(ambient, vp));
    }
    for (const auto& rp : symmetric_generators(b)) {
        auto vp = identity_permutation(a + b);
        for (std::size_t j = 0; j < b; ++j) vp[a + j] = a + rp[j];
        gens.push_back(lift(ambient, vp));
    }
    return finish(ambient.ground(), std::move(gens));
}

GroupAction sym_bipartite_swap(const AmbientGraph& ambient) {
    auto base = sym_bipartite(ambient);
    const auto a = ambient.first(), b = ambient.second();
    if (a != b) throw Error("part swap needs equal sides");
    auto gens = base.generators();
    Permutation swap(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) swap[i * b + j] = j * b + i;
    gens.push_back(swap);
    return GroupAction(ambient.ground(), std::move(gens));
}

GroupAction make_kit(const std::string& name, const std::optional<AmbientGraph>& ambient, const GroundSet& ground) {
    if (name == "sym-points") {
        auto kit = sym_points(ground.size());
        return GroupAction(ground, kit.generators());
    }
    if (!ambient) throw Error("kit '" + name + "' needs an ambient-backed family");
    if (name == "sym-vertices") return sym_vertices(*ambient);
    if (name == "sym-bipartite") return sym_bipartite(*ambient);
    if (name == "sym-bipartite-swap") return sym_bipartite_swap(*ambient);
    if (name == "sym-hyper") return sym_hyper(*ambient);
    throw Error("unknown generator kit '" + name + "'");
}

std::string format_cycles(const Permutation& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        out += "(";
        for (std::size_t x = i; !seen[x]; x = p[x]) {
            seen[x] = 1;
            if (out.back() != '(') out += ' ';
            out += std::to_string(x);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

Permutation parse_cycles(const std::string& line, std::size_t n) {
    auto p = identity_permutation(n);
    std::vector<char> moved(n, 0);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    skip_ws();
    while (pos < line.size()) {
        if (line[pos] != '(') throw Error("cycle notation: expected '('");
        ++pos;
        std::vector<std::size_t> cyc;
        while (true) {
            skip_ws();
            if (pos >= line.size()) throw Error("cycle notation: unterminated cycle");
            if (line[pos] == ')') {
                ++pos;
                break;
            }
            std::size_t v = 0;
            std::size_t start = pos;
            while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) v = v * 10 + (line[pos++] - '0');
            if (pos == start) throw Error("cycle notation: expected an element index");
            if (v >= n) throw Error("cycle notation: element out of range");
            if (pos < line.size() && line[pos] == ',') ++pos;
            cyc.push_back(v);
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (moved[cyc[i]]) throw Error("cycle notation: element repeated");
            moved[cyc[i]] = 1;
            p[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
        skip_ws();
    }
    return p;
}

void write_gen(std::ostream& os, const GroupAction& action) {
    for (const auto& g : action.generators()) os << format_cycles(g) << '\n';
}

GroupAction read_gen(std::istream& is, const GroundSet& ground) {
    std::vector<Permutation> gens;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        gens.push_back(parse_cycles(line, ground.size()));
    }
    return GroupAction(ground, std::move(gens));
}

}  // namespace ekr
