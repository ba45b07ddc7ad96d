#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ekr/ambient.hpp"
#include "ekr/core.hpp"
#include "ekr/families.hpp"

namespace ekr {

inline constexpr std::uint64_t kDefaultCoverBudget = 100'000'000;

/// |E(pattern)| does not divide the ground size, so no decomposition can exist.
class NecessaryConditionFails : public Error {
public:
    using Error::Error;
};

enum class DecompositionOutcome { constructed, found, none_exists };

struct DecompositionResult {
    AmbientGraph ambient;
    std::vector<Subset> blocks;
    std::size_t multiplicity = 1;  // j; 1 means a partition
    bool verified = false;         // every ground element lies in exactly j blocks
    DecompositionOutcome outcome = DecompositionOutcome::constructed;
    std::uint64_t node_count = 0;
};

struct CoverCheck {
    bool ok = false;
    std::optional<std::size_t> element;  // first element with the wrong multiplicity
    std::size_t count = 0;               // its multiplicity
};

/// Exact multiplicity check: every element of [0, ground_size) lies in exactly j blocks.
CoverCheck verify_decomposition(std::size_t ground_size, std::span<const Subset> blocks, std::size_t j);

/// Whether the block's edges form one cycle through every ambient vertex (walk tracing).
bool is_hamiltonian_cycle(const AmbientGraph& ambient, const Subset& block);
bool is_perfect_matching(const AmbientGraph& ambient, const Subset& block);

/// (n-1)/2 Hamiltonian cycles partitioning E(K_n), n odd.
DecompositionResult walecki(std::size_t n);
/// n-1 perfect matchings partitioning E(K_n), n even (circle method).
DecompositionResult circle_factorization(std::size_t n);
/// N_i = {u_j v_(j+i mod n)}, i = 0..n-1, partitioning E(K_{n,n}).
DecompositionResult bipartite_shift_matchings(std::size_t n);
/// C_i = N_i ∪ N_(i+1) (cyclically when wrap). Throws unless every union is a
/// Hamiltonian cycle and the unions are pairwise distinct.
DecompositionResult consecutive_unions(const DecompositionResult& factors, bool wrap);

/// Partition of the ambient ground set into copies of the pattern, by exact-cover
/// backtracking (fewest-candidates element first, candidates in canonical order).
/// outcome is none_exists after an exhaustive failed search. Throws NecessaryConditionFails
/// when |E(pattern)| does not divide the ground size, and BudgetExhausted when the node
/// budget runs out.
DecompositionResult exact_cover_decomposition(const AmbientGraph& ambient, const PatternGraph& pattern,
                                              std::uint64_t budget = kDefaultCoverBudget);

/// ".fam" of the blocks in canonical order, preceded by a "j=<multiplicity>" line.
void write_decomposition(std::ostream& os, const DecompositionResult& result);
/// Returns (multiplicity, blocks as a family).
std::pair<std::size_t, SetFamily> read_decomposition(std::istream& is);

}  // namespace ekr
