#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ekr/core.hpp"

namespace ekr {

enum class AmbientKind { complete, complete_bipartite, complete_uniform };

/// Complete graph K_n, complete bipartite K_{a,b} or complete r-uniform
/// hypergraph K_n^(r), with its edges (hyperedges) as the ground set.
///
/// Vertex numbering: K_n and K_n^(r) use 0..n-1. K_{a,b} puts the left side
/// u_0..u_{a-1} at 0..a-1 and the right side v_0..v_{b-1} at a..a+b-1.
///
/// Edge indexing:
///   K_n      (u,v), u<v   -> rank of the pair in lexicographic order
///   K_{a,b}  (u_i,v_j)    -> i*b + j
///   K_n^(r)  {x_0<..<x_r-1} -> colexicographic rank, sum C(x_i, i+1)
class AmbientGraph {
public:
    static AmbientGraph complete(std::size_t n);
    static AmbientGraph complete_bipartite(std::size_t a, std::size_t b);
    static AmbientGraph complete_uniform(std::size_t n, std::size_t r);

    /// Parses "Kn:9", "Knn:4,4" or "Kr:7,3".
    static AmbientGraph parse(const std::string& descriptor);

    AmbientKind kind() const noexcept { return kind_; }
    const GroundSet& ground() const noexcept { return ground_; }
    std::size_t vertex_count() const noexcept { return vertices_; }
    /// Hyperedge size; 2 for graphs.
    std::size_t uniformity() const noexcept { return r_; }
    /// n for K_n / K_n^(r), a for K_{a,b}.
    std::size_t first() const noexcept { return a_; }
    /// b for K_{a,b}, r for K_n^(r), 0 for K_n.
    std::size_t second() const noexcept { return b_; }

    std::string descriptor() const;

    /// Sorted vertex list of edge/hyperedge i.
    const std::vector<std::size_t>& edge_vertices(std::size_t i) const { return edges_.at(i); }
    /// Index of the edge with the given vertex set, or throws if it is not an edge.
    std::size_t edge_index(std::vector<std::size_t> vertices) const;
    bool is_edge(std::vector<std::size_t> vertices) const;

    /// Degree of every vertex (the structures are regular per side).
    std::size_t vertex_degree(std::size_t v) const;
    bool is_left(std::size_t v) const { return kind_ != AmbientKind::complete_bipartite || v < a_; }

    friend bool operator==(const AmbientGraph&, const AmbientGraph&) = default;

private:
    AmbientGraph() = default;
    void build_ground();

    AmbientKind kind_ = AmbientKind::complete;
    std::size_t a_ = 0, b_ = 0, r_ = 2, vertices_ = 0;
    std::vector<std::vector<std::size_t>> edges_;
    GroundSet ground_;
};

/// Union of the endpoint sets of the member's edges, as a subset of the vertex set.
Subset vertex_set_of(const AmbientGraph& ambient, const Subset& member);

}  // namespace ekr
