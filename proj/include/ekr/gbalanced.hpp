#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ekr/ambient.hpp"
#include "ekr/core.hpp"
#include "ekr/solver.hpp"

namespace ekr {

/// image[i] is where element i goes.
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t n);
Permutation inverse(const Permutation& p);
/// Apply `first`, then `second`.
Permutation compose(const Permutation& first, const Permutation& second);

/// A permutation group on the ground set, given only by generators.
class GroupAction {
public:
    GroupAction(GroundSet ground, std::vector<Permutation> generators);

    const GroundSet& ground() const noexcept { return ground_; }
    const std::vector<Permutation>& generators() const noexcept { return generators_; }

private:
    GroundSet ground_;
    std::vector<Permutation> generators_;
};

struct WordLetter {
    std::size_t generator;
    bool inverse = false;
};

/// Product of the letters, applied left to right.
Permutation evaluate_word(const GroupAction& action, std::span<const WordLetter> word);

/// Breadth-first closure of {seed} under the generators.
std::vector<std::size_t> orbit(const GroupAction& action, std::size_t seed);

Subset act_on_subset(const Permutation& g, const Subset& member);

struct FamilyAction {
    bool closed = false;
    std::optional<bool> transitive;  // empty when the family is not closed
    /// (member index, generator index) whose image left the family.
    std::optional<std::pair<std::size_t, std::size_t>> escape;
    std::size_t orbit_size = 0;  // orbit of member 0 when closed
};

FamilyAction check_transitive_on_family(const GroupAction& action, const SetFamily& family);

struct BalancedVerdict {
    bool transitive_on_ground = false;
    bool family_closed = false;
    bool transitive_on_family = false;
    bool cover_multiplicity_ok = false;
    bool cover_clique_ok = false;
    std::size_t j = 0;
    std::size_t r = 0;                     // number of cover blocks
    std::size_t cover_max_intersecting = 0;
    std::optional<std::pair<std::size_t, std::size_t>> multiplicity_witness;  // (element, count)
    std::optional<std::vector<std::size_t>> clique_witness;  // cover positions forming a too-large intersecting set
    bool passed() const noexcept {
        return transitive_on_ground && family_closed && transitive_on_family && cover_multiplicity_ok && cover_clique_ok;
    }
};

/// Checks that the family is (G, j)-balanced with the given cover D_1..D_r (member indices,
/// repetition allowed): G transitive on the ground set and on the family, every element in
/// exactly j blocks, and no more than j blocks pairwise intersecting under `rule`.
BalancedVerdict check_g_balanced(const GroupAction& action, const SetFamily& family, std::span<const std::size_t> cover,
                                 std::size_t j, const IntersectionRule& rule, const SolverOptions& options = {});

/// The k-windows of a cyclic ordering, as member indices. Throws if a window is not a member.
std::vector<std::size_t> window_cover(std::span<const std::size_t> order, const SetFamily& family, std::size_t k);

// Generator kits.
GroupAction sym_points(std::size_t n);
GroupAction sym_vertices(const AmbientGraph& ambient);        // S_n on K_n edges
GroupAction sym_bipartite(const AmbientGraph& ambient);       // S_a x S_b on K_{a,b} edges
GroupAction sym_bipartite_swap(const AmbientGraph& ambient);  // plus the part swap, a = b
GroupAction sym_hyper(const AmbientGraph& ambient);           // S_n on K_n^(r) hyperedges
/// "sym-vertices", "sym-bipartite", "sym-bipartite-swap", "sym-hyper", "sym-points".
GroupAction make_kit(const std::string& name, const std::optional<AmbientGraph>& ambient, const GroundSet& ground);

// ".gen": one permutation per line in cycle notation, e.g. "(0 1)(2 5 3)"; "()" is the identity.
std::string format_cycles(const Permutation& p);
Permutation parse_cycles(const std::string& line, std::size_t n);
void write_gen(std::ostream& os, const GroupAction& action);
GroupAction read_gen(std::istream& is, const GroundSet& ground);

}  // namespace ekr
