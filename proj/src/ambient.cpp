#include "ekr/ambient.hpp"

#include <algorithm>
#include <charconv>

namespace ekr {

namespace {

std::size_t pair_rank(std::size_t n, std::size_t u, std::size_t v) {
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

std::size_t colex_rank(const std::vector<std::size_t>& sorted) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], i + 1);
    return r;
}

std::vector<std::size_t> parse_ints(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::size_t v = 0;
        auto first = s.data() + pos;
        auto last = s.data() + comma;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (first == last || ec != std::errc() || ptr != last) throw Error("malformed integer list '" + s + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

}  // namespace

AmbientGraph AmbientGraph::complete(std::size_t n) {
    if (n < 1) throw Error("complete graph needs n >= 1");
    if (n * (n - 1) / 2 > kMaxUniverse) throw Error("K_" + std::to_string(n) + " has too many edges");
    if (n < 2) throw Error("K_1 has no edges");
    AmbientGraph g;
    g.kind_ = AmbientKind::complete;
    g.a_ = n;
    g.vertices_ = n;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.edges_.push_back({u, v});
    g.build_ground();
    return g;
}

AmbientGraph AmbientGraph::complete_bipartite(std::size_t a, std::size_t b) {
    if (a < 1 || b < 1) throw Error("complete bipartite graph needs a, b >= 1");
    if (a * b > kMaxUniverse) throw Error("K_{a,b} has too many edges");
    AmbientGraph g;
    g.kind_ = AmbientKind::complete_bipartite;
    g.a_ = a;
    g.b_ = b;
    g.vertices_ = a + b;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) g.edges_.push_back({i, a + j});
    g.build_ground();
    return g;
}

AmbientGraph AmbientGraph::complete_uniform(std::size_t n, std::size_t r) {
    if (n < 1 || r < 1 || r > n) throw Error("complete uniform hypergraph needs 1 <= r <= n");
    if (binomial(n, r) > kMaxUniverse) throw Error("K_n^(r) has too many hyperedges");
    AmbientGraph g;
    g.kind_ = AmbientKind::complete_uniform;
    g.a_ = n;
    g.b_ = r;
    g.r_ = r;
    g.vertices_ = n;
    g.edges_.resize(binomial(n, r));
    for_each_combination(n, r, [&](std::span<const std::size_t> c) {
        std::vector<std::size_t> e(c.begin(), c.end());
        g.edges_[colex_rank(e)] = e;
    });
    g.build_ground();
    return g;
}

void AmbientGraph::build_ground() {
    std::vector<std::string> labels;
    labels.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (kind_ == AmbientKind::complete) {
            labels.push_back(std::to_string(e[0]) + "-" + std::to_string(e[1]));
        } else if (kind_ == AmbientKind::complete_bipartite) {
            labels.push_back("u" + std::to_string(e[0]) + "-v" + std::to_string(e[1] - a_));
        } else {
            std::string l = "{";
            for (std::size_t i = 0; i < e.size(); ++i) l += (i ? "," : "") + std::to_string(e[i]);
            labels.push_back(l + "}");
        }
    }
    ground_ = GroundSet(std::move(labels));
}

AmbientGraph AmbientGraph::parse(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) throw Error("ambient descriptor '" + descriptor + "' lacks ':'");
    auto kind = descriptor.substr(0, colon);
    auto args = parse_ints(descriptor.substr(colon + 1));
    if (kind == "Kn" && args.size() == 1) return complete(args[0]);
    if (kind == "Knn" && args.size() == 2) return complete_bipartite(args[0], args[1]);
    if (kind == "Kr" && args.size() == 2) return complete_uniform(args[0], args[1]);
    throw Error("unknown ambient descriptor '" + descriptor + "'");
}

std::string AmbientGraph::descriptor() const {
    switch (kind_) {
        case AmbientKind::complete: return "Kn:" + std::to_string(a_);
        case AmbientKind::complete_bipartite: return "Knn:" + std::to_string(a_) + "," + std::to_string(b_);
        case AmbientKind::complete_uniform: return "Kr:" + std::to_string(a_) + "," + std::to_string(b_);
    }
    return {};
}

bool AmbientGraph::is_edge(std::vector<std::size_t> v) const {
    std::sort(v.begin(), v.end());
    if (v.size() != r_ || std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    if (v.back() >= vertices_) return false;
    if (kind_ == AmbientKind::complete_bipartite) return v[0] < a_ && v[1] >= a_;
    return true;
}

std::size_t AmbientGraph::edge_index(std::vector<std::size_t> v) const {
    std::sort(v.begin(), v.end());
    if (!is_edge(v)) throw Error("vertex set is not an edge of " + descriptor());
    switch (kind_) {
        case AmbientKind::complete: return pair_rank(a_, v[0], v[1]);
        case AmbientKind::complete_bipartite: return v[0] * b_ + (v[1] - a_);
        case AmbientKind::complete_uniform: return colex_rank(v);
    }
    return 0;
}

std::size_t AmbientGraph::vertex_degree(std::size_t v) const {
    switch (kind_) {
        case AmbientKind::complete: return a_ - 1;
        case AmbientKind::complete_bipartite: return v < a_ ? b_ : a_;
        case AmbientKind::complete_uniform: return binomial(a_ - 1, r_ - 1);
    }
    return 0;
}

Subset vertex_set_of(const AmbientGraph& ambient, const Subset& member) {
    if (member.universe_size() != ambient.ground().size()) throw Error("universe mismatch");
    Subset out(ambient.vertex_count());
    for (auto e : member.indices())
        for (auto v : ambient.edge_vertices(e)) out.set(v);
    return out;
}

}  // namespace ekr
