#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ekr/ambient.hpp"
#include "ekr/core.hpp"

namespace ekr {

inline constexpr std::size_t kDefaultMemberCap = 2'000'000;

/// A fixed graph or r-uniform hypergraph H whose copies are enumerated.
class PatternGraph {
public:
    PatternGraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges, std::size_t uniformity = 2);

    static PatternGraph cycle(std::size_t k);
    static PatternGraph clique(std::size_t k);
    static PatternGraph matching(std::size_t k);
    static PatternGraph path(std::size_t vertices);
    static PatternGraph complete_bipartite(std::size_t a, std::size_t b);
    /// "triangle", "edge", "c<k>", "k<k>", "m<k>", "p<k>".
    static PatternGraph builtin(const std::string& name);

    std::size_t vertex_count() const noexcept { return vertices_; }
    std::size_t uniformity() const noexcept { return r_; }
    const std::vector<std::vector<std::size_t>>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::vector<std::size_t> degrees() const;
    bool has_isolated_vertices() const;

private:
    std::size_t vertices_;
    std::size_t r_;
    std::vector<std::vector<std::size_t>> edges_;
};

// ".pat" text format: "v e r", then e lines of r sorted vertex indices.
void write_pat(std::ostream& os, const PatternGraph& p);
PatternGraph read_pat(std::istream& is);
PatternGraph load_pat(const std::string& path);

/// A family together with the ambient structure its ground set comes from.
struct AmbientFamily {
    AmbientGraph ambient;
    SetFamily family;
};

SetFamily k_subsets(std::size_t n, std::size_t k, std::size_t cap = kDefaultMemberCap);
/// k-subsets of the cyclically ordered [n] with no two cyclically adjacent elements.
SetFamily separated_k_subsets(std::size_t n, std::size_t k, std::size_t cap = kDefaultMemberCap);

AmbientFamily perfect_matchings_bipartite(std::size_t n, std::size_t cap = kDefaultMemberCap);
SetFamily k_matchings(const AmbientGraph& ambient, std::size_t k, std::size_t cap = kDefaultMemberCap);
AmbientFamily k_cycles_complete(std::size_t n, std::size_t k, std::size_t cap = kDefaultMemberCap);
AmbientFamily cycles_bipartite(std::size_t n, std::size_t two_k, std::size_t cap = kDefaultMemberCap);
AmbientFamily cliques_complete(std::size_t n, std::size_t k, std::size_t cap = kDefaultMemberCap);
AmbientFamily bicliques(std::size_t n, std::size_t k, std::size_t cap = kDefaultMemberCap);

/// Distinct edge sets of all copies of the pattern in the ambient structure.
SetFamily h_copies(const AmbientGraph& ambient, const PatternGraph& pattern, std::size_t cap = kDefaultMemberCap);

/// Parsed CLI family descriptor ("ksub:n,k", "cyc:n,k", "copies:Kn:5,tri.pat", ...).
/// ambient is empty for families over abstract points.
struct GeneratedFamily {
    std::optional<AmbientGraph> ambient;
    SetFamily family;
};
GeneratedFamily generate_family(const std::string& descriptor, std::size_t cap = kDefaultMemberCap);

}  // namespace ekr
