#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ekr/ambient.hpp"
#include "ekr/core.hpp"

namespace ekr {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;
inline constexpr std::size_t kDefaultWitnessCap = 100'000;
/// Largest graph order accepted (order^2 bits of adjacency).
inline constexpr std::size_t kMaxGraphOrder = 20'000;

enum class IntersectionMode { element, vertex };

/// When two members count as intersecting: at least t shared ground elements
/// (element mode), or at least t shared ambient vertices (vertex mode).
class IntersectionRule {
public:
    static IntersectionRule element(std::size_t t = 1);
    static IntersectionRule vertex(std::size_t t, AmbientGraph ambient);

    std::size_t t() const noexcept { return t_; }
    IntersectionMode mode() const noexcept { return mode_; }
    const std::optional<AmbientGraph>& ambient() const noexcept { return ambient_; }

    /// The set whose overlap the rule measures: the member itself, or its vertex set.
    Subset key(const Subset& member) const;
    /// Universe size of key().
    std::size_t key_universe(std::size_t ground_size) const;
    bool related(const Subset& a, const Subset& b) const;

private:
    std::size_t t_ = 1;
    IntersectionMode mode_ = IntersectionMode::element;
    std::optional<AmbientGraph> ambient_;
};

/// Undirected simple graph as a symmetric bit matrix, row-major, 64-bit words.
class BitGraph {
public:
    BitGraph() = default;
    explicit BitGraph(std::size_t order);

    std::size_t order() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return w_; }
    bool adjacent(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1U; }
    void add_edge(std::size_t i, std::size_t j);
    std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * w_, w_}; }
    std::size_t degree(std::size_t i) const;
    std::size_t edge_count() const;

    friend bool operator==(const BitGraph&, const BitGraph&) = default;

private:
    std::size_t n_ = 0, w_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct IntersectionGraph {
    BitGraph graph;
    std::size_t t = 1;
    IntersectionMode mode = IntersectionMode::element;
};

struct SolverOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    std::size_t witness_cap = kDefaultWitnessCap;
};

struct CliqueResult {
    std::size_t size = 0;
    std::vector<std::size_t> witness;  // ascending member indices
    std::uint64_t node_count = 0;
};

struct Enumeration {
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> witnesses;  // each ascending, list sorted
    bool exhaustive = true;
    std::uint64_t node_count = 0;
};

IntersectionGraph build_intersection_graph(std::span<const Subset> members, const IntersectionRule& rule);
IntersectionGraph build_intersection_graph(const SetFamily& family, const IntersectionRule& rule);

/// Exact maximum clique. An optional known clique seeds the incumbent, so only strictly
/// larger cliques are searched for; it is returned as the witness if none exists.
/// Throws BudgetExhausted when options.node_budget is exceeded.
CliqueResult max_clique(const BitGraph& g, const SolverOptions& options = {},
                        std::span<const std::size_t> incumbent = {});

/// Visits every clique of exactly `size` vertices (ascending index lists).
/// The visitor returns false to stop early. Returns nodes explored.
/// Throws BudgetExhausted when options.node_budget is exceeded.
std::uint64_t for_each_clique_of_size(const BitGraph& g, std::size_t size,
                                      const std::function<bool(std::span<const std::size_t>)>& visit,
                                      const SolverOptions& options = {});

CliqueResult max_intersecting(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options = {},
                              std::span<const std::size_t> incumbent = {});

/// All maximum intersecting subfamilies up to options.witness_cap; exhaustive=false when capped.
Enumeration enumerate_maximum(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options = {});

bool is_intersecting(std::span<const Subset> members, std::span<const std::size_t> indices, const IntersectionRule& rule);
bool is_intersecting(const SetFamily& family, std::span<const std::size_t> indices, const IntersectionRule& rule);

// DIMACS "p edge N M" / "e i j" (1-based).
void write_dimacs(std::ostream& os, const BitGraph& g);
BitGraph read_dimacs(std::istream& is);

}  // namespace ekr
