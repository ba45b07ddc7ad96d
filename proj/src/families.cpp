#include "ekr/families.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace ekr {

namespace {

void check_cap(std::uint64_t count, std::size_t cap) {
    if (count > cap)
        throw Error("family too large: " + std::to_string(count) + " members exceeds cap " + std::to_string(cap));
}

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (r > UINT64_MAX / i) throw Error("factorial overflow");
        r *= i;
    }
    return r;
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
    return r;
}

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error("malformed integer '" + std::string(s) + "'");
    return v;
}

std::vector<std::size_t> parse_list(std::string_view s) {
    std::vector<std::size_t> out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_size(s.substr(0, comma)));
        if (comma == std::string_view::npos) return out;
        s.remove_prefix(comma + 1);
    }
}

Subset edges_subset(const AmbientGraph& g, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Subset s(g.ground().size());
    for (auto [u, v] : edges) s.set(g.edge_index({u, v}));
    return s;
}

}  // namespace

PatternGraph::PatternGraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges, std::size_t uniformity)
    : vertices_(vertex_count), r_(uniformity), edges_(std::move(edges)) {
    if (r_ < 2) throw Error("pattern uniformity must be at least 2");
    for (auto& e : edges_) {
        std::sort(e.begin(), e.end());
        if (e.size() != r_) throw Error("pattern edge has wrong size");
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw Error("pattern edge repeats a vertex");
        if (e.back() >= vertices_) throw Error("pattern edge vertex out of range");
    }
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate pattern edge");
}

PatternGraph PatternGraph::cycle(std::size_t k) {
    if (k < 3) throw Error("cycle needs at least 3 vertices");
    std::vector<std::vector<std::size_t>> e;
    for (std::size_t i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
    return PatternGraph(k, std::move(e));
}

PatternGraph PatternGraph::clique(std::size_t k) {
    if (k < 2) throw Error("clique needs at least 2 vertices");
    std::vector<std::vector<std::size_t>> e;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) e.push_back({i, j});
    return PatternGraph(k, std::move(e));
}

PatternGraph PatternGraph::matching(std::size_t k) {
    if (k < 1) throw Error("matching needs at least one edge");
    std::vector<std::vector<std::size_t>> e;
    for (std::size_t i = 0; i < k; ++i) e.push_back({2 * i, 2 * i + 1});
    return PatternGraph(2 * k, std::move(e));
}

PatternGraph PatternGraph::path(std::size_t vertices) {
    if (vertices < 2) throw Error("path needs at least 2 vertices");
    std::vector<std::vector<std::size_t>> e;
    for (std::size_t i = 0; i + 1 < vertices; ++i) e.push_back({i, i + 1});
    return PatternGraph(vertices, std::move(e));
}

PatternGraph PatternGraph::complete_bipartite(std::size_t a, std::size_t b) {
    if (a < 1 || b < 1) throw Error("complete bipartite pattern needs a, b >= 1");
    std::vector<std::vector<std::size_t>> e;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) e.push_back({i, a + j});
    return PatternGraph(a + b, std::move(e));
}

PatternGraph PatternGraph::builtin(const std::string& name) {
    if (name == "triangle") return cycle(3);
    if (name == "edge") return clique(2);
    if (name.size() >= 2) {
        auto k = parse_size(std::string_view(name).substr(1));
        switch (name[0]) {
            case 'c': return cycle(k);
            case 'k': return clique(k);
            case 'm': return matching(k);
            case 'p': return path(k);
            default: break;
        }
    }
    throw Error("unknown builtin pattern '" + name + "'");
}

std::vector<std::size_t> PatternGraph::degrees() const {
    std::vector<std::size_t> d(vertices_, 0);
    for (const auto& e : edges_)
        for (auto v : e) ++d[v];
    return d;
}

bool PatternGraph::has_isolated_vertices() const {
    auto d = degrees();
    return std::find(d.begin(), d.end(), 0) != d.end();
}

void write_pat(std::ostream& os, const PatternGraph& p) {
    os << p.vertex_count() << ' ' << p.edge_count() << ' ' << p.uniformity() << '\n';
    for (const auto& e : p.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
}

PatternGraph read_pat(std::istream& is) {
    std::size_t v = 0, e = 0, r = 0;
    if (!(is >> v >> e >> r)) throw Error(".pat: malformed header");
    std::vector<std::vector<std::size_t>> edges(e, std::vector<std::size_t>(r));
    for (auto& edge : edges) {
        for (auto& x : edge)
            if (!(is >> x)) throw Error(".pat: truncated edge list");
        if (!std::is_sorted(edge.begin(), edge.end())) throw Error(".pat: edge vertices must be sorted");
    }
    return PatternGraph(v, std::move(edges), r);
}

PatternGraph load_pat(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_pat(is);
}

SetFamily k_subsets(std::size_t n, std::size_t k, std::size_t cap) {
    if (k < 1 || k > n) throw Error("k_subsets needs 1 <= k <= n");
    check_cap(binomial(n, k), cap);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> c) { members.push_back(Subset::from_indices(n, c)); });
    return canonicalize(std::move(members), GroundSet::points(n));
}

SetFamily separated_k_subsets(std::size_t n, std::size_t k, std::size_t cap) {
    if (k < 1 || n < 2 * k) throw Error("separated_k_subsets needs k >= 1 and n >= 2k");
    check_cap(binomial(n, k), cap);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> c) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i + 1] == c[i] + 1) return;
        if (c.size() > 1 && c.front() == 0 && c.back() == n - 1) return;
        members.push_back(Subset::from_indices(n, c));
    });
    return canonicalize(std::move(members), GroundSet::points(n));
}

SetFamily k_matchings(const AmbientGraph& ambient, std::size_t k, std::size_t cap) {
    std::uint64_t expected = 0;
    if (ambient.kind() == AmbientKind::complete) {
        auto n = ambient.first();
        if (k < 1 || n < 2 * k) throw Error("k_matchings in K_n needs 1 <= k and n >= 2k");
        std::uint64_t pairings = 1;  // (2k-1)!!
        for (std::uint64_t i = 1; i < 2 * k; i += 2) pairings = mul(pairings, i);
        expected = mul(binomial(n, 2 * k), pairings);
    } else if (ambient.kind() == AmbientKind::complete_bipartite) {
        auto m = std::min(ambient.first(), ambient.second());
        if (k < 1 || m < k) throw Error("k_matchings in K_{a,b} needs 1 <= k <= min(a,b)");
        expected = mul(mul(binomial(ambient.first(), k), binomial(ambient.second(), k)), factorial(k));
    } else {
        throw Error("k_matchings needs a graph ambient");
    }
    check_cap(expected, cap);

    const auto& g = ambient;
    const auto edge_count = g.ground().size();
    std::vector<Subset> members;
    members.reserve(expected);
    std::vector<char> used(g.vertex_count(), 0);
    Subset current(edge_count);
    auto rec = [&](auto&& self, std::size_t from, std::size_t left) -> void {
        if (left == 0) {
            members.push_back(current);
            return;
        }
        for (std::size_t e = from; e < edge_count; ++e) {
            const auto& vs = g.edge_vertices(e);
            if (used[vs[0]] || used[vs[1]]) continue;
            used[vs[0]] = used[vs[1]] = 1;
            current.set(e);
            self(self, e + 1, left - 1);
            current.reset(e);
            used[vs[0]] = used[vs[1]] = 0;
        }
    };
    rec(rec, 0, k);
    return canonicalize(std::move(members), g.ground());
}

AmbientFamily perfect_matchings_bipartite(std::size_t n, std::size_t cap) {
    if (n < 1) throw Error("perfect_matchings_bipartite needs n >= 1");
    check_cap(factorial(n), cap);
    auto g = AmbientGraph::complete_bipartite(n, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Subset> members;
    do {
        Subset s(g.ground().size());
        for (std::size_t i = 0; i < n; ++i) s.set(i * n + perm[i]);
        members.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto fam = canonicalize(std::move(members), g.ground());
    return {std::move(g), std::move(fam)};
}

AmbientFamily k_cycles_complete(std::size_t n, std::size_t k, std::size_t cap) {
    if (k < 3 || k > n) throw Error("k_cycles_complete needs 3 <= k <= n");
    check_cap(mul(binomial(n, k), factorial(k - 1) / 2), cap);
    auto g = AmbientGraph::complete(n);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> c) {
        // Fix the smallest vertex first; keep one of each pair of reversed orders.
        std::vector<std::size_t> rest(c.begin() + 1, c.end());
        do {
            if (rest.front() > rest.back()) continue;
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            std::size_t prev = c[0];
            for (auto v : rest) {
                edges.emplace_back(prev, v);
                prev = v;
            }
            edges.emplace_back(prev, c[0]);
            members.push_back(edges_subset(g, edges));
        } while (std::next_permutation(rest.begin(), rest.end()));
    });
    auto fam = canonicalize(std::move(members), g.ground());
    return {std::move(g), std::move(fam)};
}

AmbientFamily cycles_bipartite(std::size_t n, std::size_t two_k, std::size_t cap) {
    if (two_k % 2 != 0) throw Error("cycles_bipartite needs an even cycle length");
    auto k = two_k / 2;
    if (k < 2 || k > n) throw Error("cycles_bipartite needs 2 <= k <= n");
    auto per_biclique = mul(factorial(k - 1), factorial(k)) / 2;
    check_cap(mul(mul(binomial(n, k), binomial(n, k)), per_biclique), cap);
    auto g = AmbientGraph::complete_bipartite(n, n);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> left) {
        for_each_combination(n, k, [&](std::span<const std::size_t> right) {
            std::vector<std::size_t> a_rest(left.begin() + 1, left.end());
            do {
                std::vector<std::size_t> b(right.begin(), right.end());
                do {
                    // left[0], b[0], a_rest[0], b[1], ..., b[k-1], back to left[0]
                    std::vector<std::size_t> walk;
                    walk.push_back(left[0]);
                    for (std::size_t i = 0; i < k; ++i) {
                        walk.push_back(n + b[i]);
                        if (i + 1 < k) walk.push_back(a_rest[i]);
                    }
                    std::vector<std::pair<std::size_t, std::size_t>> edges;
                    for (std::size_t i = 0; i < walk.size(); ++i) {
                        auto u = walk[i], v = walk[(i + 1) % walk.size()];
                        edges.emplace_back(std::min(u, v), std::max(u, v));
                    }
                    members.push_back(edges_subset(g, edges));
                } while (std::next_permutation(b.begin(), b.end()));
            } while (std::next_permutation(a_rest.begin(), a_rest.end()));
        });
    });
    auto fam = canonicalize(std::move(members), g.ground());
    return {std::move(g), std::move(fam)};
}

AmbientFamily cliques_complete(std::size_t n, std::size_t k, std::size_t cap) {
    if (k < 2 || k > n) throw Error("cliques_complete needs 2 <= k <= n");
    check_cap(binomial(n, k), cap);
    auto g = AmbientGraph::complete(n);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> c) {
        Subset s(g.ground().size());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) s.set(g.edge_index({c[i], c[j]}));
        members.push_back(std::move(s));
    });
    auto fam = canonicalize(std::move(members), g.ground());
    return {std::move(g), std::move(fam)};
}

AmbientFamily bicliques(std::size_t n, std::size_t k, std::size_t cap) {
    if (k < 1 || k > n) throw Error("bicliques needs 1 <= k <= n");
    check_cap(mul(binomial(n, k), binomial(n, k)), cap);
    auto g = AmbientGraph::complete_bipartite(n, n);
    std::vector<Subset> members;
    for_each_combination(n, k, [&](std::span<const std::size_t> left) {
        for_each_combination(n, k, [&](std::span<const std::size_t> right) {
            Subset s(g.ground().size());
            for (auto i : left)
                for (auto j : right) s.set(i * n + j);
            members.push_back(std::move(s));
        });
    });
    auto fam = canonicalize(std::move(members), g.ground());
    return {std::move(g), std::move(fam)};
}

SetFamily h_copies(const AmbientGraph& ambient, const PatternGraph& pattern, std::size_t cap) {
    if (pattern.uniformity() != ambient.uniformity()) throw Error("pattern uniformity does not match ambient");
    if (pattern.vertex_count() > ambient.vertex_count()) throw Error("pattern has more vertices than the ambient");
    if (pattern.has_isolated_vertices()) throw Error("isolated vertices unsupported");

    const auto pv = pattern.vertex_count();
    auto pdeg = pattern.degrees();

    // Map vertices in BFS order over the pattern's incidence structure so each
    // newly placed vertex is constrained by placed neighbours.
    std::vector<std::vector<std::size_t>> incident(pv);
    for (std::size_t e = 0; e < pattern.edge_count(); ++e)
        for (auto v : pattern.edges()[e]) incident[v].push_back(e);
    std::vector<std::size_t> order;
    std::vector<char> seen(pv, 0);
    for (std::size_t root = 0; root < pv; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        order.push_back(root);
        for (std::size_t head = order.size() - 1; head < order.size(); ++head)
            for (auto e : incident[order[head]])
                for (auto w : pattern.edges()[e])
                    if (!seen[w]) {
                        seen[w] = 1;
                        order.push_back(w);
                    }
    }
    std::vector<std::size_t> position(pv);
    for (std::size_t i = 0; i < pv; ++i) position[order[i]] = i;
    // Edges that become fully placed at each step.
    std::vector<std::vector<std::size_t>> closing(pv);
    for (std::size_t e = 0; e < pattern.edge_count(); ++e) {
        std::size_t last = 0;
        for (auto v : pattern.edges()[e]) last = std::max(last, position[v]);
        closing[last].push_back(e);
    }

    std::unordered_set<Subset, SubsetHash> found;
    std::vector<std::size_t> image(pv);
    std::vector<char> used(ambient.vertex_count(), 0);
    Subset current(ambient.ground().size());
    std::vector<std::size_t> scratch;

    auto rec = [&](auto&& self, std::size_t step) -> void {
        if (step == pv) {
            if (found.insert(current).second) check_cap(found.size(), cap);
            return;
        }
        auto pvtx = order[step];
        for (std::size_t a = 0; a < ambient.vertex_count(); ++a) {
            if (used[a] || ambient.vertex_degree(a) < pdeg[pvtx]) continue;
            image[pvtx] = a;
            bool ok = true;
            std::vector<std::size_t> placed;
            for (auto e : closing[step]) {
                scratch.clear();
                for (auto v : pattern.edges()[e]) scratch.push_back(image[v]);
                if (!ambient.is_edge(scratch)) {
                    ok = false;
                    break;
                }
                auto idx = ambient.edge_index(scratch);
                current.set(idx);
                placed.push_back(idx);
            }
            if (ok) {
                used[a] = 1;
                self(self, step + 1);
                used[a] = 0;
            }
            for (auto idx : placed) current.reset(idx);
        }
    };
    rec(rec, 0);
    return canonicalize(std::vector<Subset>(found.begin(), found.end()), ambient.ground());
}

GeneratedFamily generate_family(const std::string& descriptor, std::size_t cap) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) throw Error("family descriptor '" + descriptor + "' lacks ':'");
    std::string kind = descriptor.substr(0, colon);
    std::string args = descriptor.substr(colon + 1);

    auto two = [&](const char* what) {
        auto v = parse_list(args);
        if (v.size() != 2) throw Error(std::string(what) + " expects two integers");
        return std::pair{v[0], v[1]};
    };
    auto wrap = [](AmbientFamily af) { return GeneratedFamily{std::move(af.ambient), std::move(af.family)}; };

    if (kind == "ksub") {
        auto [n, k] = two("ksub");
        return {std::nullopt, k_subsets(n, k, cap)};
    }
    if (kind == "sep") {
        auto [n, k] = two("sep");
        return {std::nullopt, separated_k_subsets(n, k, cap)};
    }
    if (kind == "pm") {
        auto v = parse_list(args);
        if (v.size() != 1) throw Error("pm expects one integer");
        return wrap(perfect_matchings_bipartite(v[0], cap));
    }
    if (kind == "cyc") {
        auto [n, k] = two("cyc");
        return wrap(k_cycles_complete(n, k, cap));
    }
    if (kind == "bcyc") {
        auto [n, k2] = two("bcyc");
        return wrap(cycles_bipartite(n, k2, cap));
    }
    if (kind == "clique") {
        auto [n, k] = two("clique");
        return wrap(cliques_complete(n, k, cap));
    }
    if (kind == "biclique") {
        auto [n, k] = two("biclique");
        return wrap(bicliques(n, k, cap));
    }
    if (kind == "match" || kind == "copies") {
        // AMBIENT is "Kn:a", "Knn:a,b" or "Kr:n,r"; its argument count fixes where it ends.
        auto inner = args.find(':');
        if (inner == std::string::npos) throw Error(kind + " expects AMBIENT,ARG");
        auto akind = args.substr(0, inner);
        std::size_t nargs = akind == "Kn" ? 1 : 2;
        std::size_t pos = inner;
        for (std::size_t i = 0; i < nargs; ++i) {
            pos = args.find(',', pos + 1);
            if (pos == std::string::npos) throw Error(kind + " expects AMBIENT,ARG");
        }
        auto ambient = AmbientGraph::parse(args.substr(0, pos));
        auto rest = args.substr(pos + 1);
        if (kind == "match") {
            auto fam = k_matchings(ambient, parse_size(rest), cap);
            return {std::move(ambient), std::move(fam)};
        }
        bool is_file = rest.find('.') != std::string::npos || rest.find('/') != std::string::npos;
        auto pattern = is_file ? load_pat(rest) : PatternGraph::builtin(rest);
        auto fam = h_copies(ambient, pattern, cap);
        return {std::move(ambient), std::move(fam)};
    }
    throw Error("unknown family descriptor '" + descriptor + "'");
}

}  // namespace ekr
