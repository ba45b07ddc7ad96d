#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ekr/core.hpp"
#include "ekr/solver.hpp"
#include "ekr/verify.hpp"

namespace ekr {

using RelatedPair = std::pair<std::size_t, std::size_t>;  // (lower index, upper index)

/// Indexed family of regular relations from a uniform lower family (ℓ-sets) to a
/// uniform upper family (m-sets) over one ground set. Construction rejects any
/// related pair (L, M) with L not contained in M.
class RelationFamily {
public:
    RelationFamily(SetFamily lower, SetFamily upper, std::vector<std::vector<RelatedPair>> relations);

    const SetFamily& lower() const noexcept { return lower_; }
    const SetFamily& upper() const noexcept { return upper_; }
    std::size_t relation_count() const noexcept { return relations_.size(); }
    const std::vector<RelatedPair>& relation(std::size_t i) const { return relations_.at(i); }

    std::size_t lower_size() const noexcept { return *lower_.uniform_size(); }
    std::size_t upper_size() const noexcept { return *upper_.uniform_size(); }

    /// Lower members related to upper member M under relation i, ascending.
    const std::vector<std::size_t>& fiber(std::size_t i, std::size_t upper_index) const;
    /// Number of upper members related to lower member L under relation i.
    std::size_t upper_degree(std::size_t i, std::size_t lower_index) const;

private:
    SetFamily lower_, upper_;
    std::vector<std::vector<RelatedPair>> relations_;
    std::vector<std::vector<std::vector<std::size_t>>> fibers_;  // [i][M] -> L indices
    std::vector<std::vector<std::size_t>> degrees_;              // [i][L] -> count
};

/// Single relation {⊆}: every pair with L ⊆ M.
RelationFamily inclusion_relation(const SetFamily& lower, const SetFamily& upper);

/// Fiber members re-expressed over the ground set M (elements outside M dropped, order kept).
SetFamily reground_fiber(const RelationFamily& rel, std::size_t i, std::size_t upper_index);

struct ChainFailure {
    std::string condition;  // "1.i" .. "1.iv", "2.i", "2.ii"
    std::string witness;
    friend auto operator<=>(const ChainFailure&, const ChainFailure&) = default;
};

struct ChainVerdict {
    bool is_chain = false;
    bool special_checked = false;
    bool is_special = false;
    bool unknown = false;  // a budget or cap prevented a decision
    std::vector<ChainFailure> failures;
    std::optional<std::size_t> fiber_size;  // common |L^(i)_M| when condition 1.iii holds
    std::optional<std::size_t> degree_sum;  // common Σ_i |M^(i)_L| when condition 1.iv holds
    std::size_t fibers_checked = 0;
    std::uint64_t node_count = 0;
};

/// Conditions (i)-(iv) of an EKR chain. `rule` applies to the upper family; fibers
/// use element-mode intersection with the same t on their re-grounded copies.
ChainVerdict check_ekr_chain(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options = {});

/// EKR chain plus: upper family strong EKR, and for every M and x in M some M' with M ∩ M' = {x}.
ChainVerdict check_special_chain(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options = {});

struct IdentityCheck {
    std::string identity;  // "i", "ii", "iii", "iv"
    std::string probe;     // what was probed, e.g. "a=3" or "M=4,i=0"
    std::uint64_t lhs = 0;
    std::uint64_t rhs_num = 0, rhs_den = 1;  // rhs as a reduced fraction
    bool holds = false;
};

struct CountingReport {
    std::vector<IdentityCheck> checks;
    bool all_hold = true;
    bool holds(const std::string& identity) const;
};

/// Exact-integer checks of the double-counting identities for a chain:
///   (i)   |M_a| = (m/n)|M| for every a
///   (ii)  max intersecting in M = (m/n)|M|
///   (iii) max intersecting in each fiber = (ℓ/m)|fiber|
///   (iv)  |L_a| = ℓ·|fiber|·|M|·|I| / (n·Σ_j |M^(j)_L|) for every a
CountingReport check_counting_identities(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options = {});

// ".rel" text format: "|I|", then for each relation a count line followed by "L M" lines.
void write_rel(std::ostream& os, const RelationFamily& rel);
RelationFamily read_rel(std::istream& is, SetFamily lower, SetFamily upper);

}  // namespace ekr
