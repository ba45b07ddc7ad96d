#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ekr/core.hpp"
#include "ekr/solver.hpp"

namespace ekr {

/// Raised for families with an uncovered star key (an element, or t-set, lying in no member).
class DegenerateFamily : public Error {
public:
    using Error::Error;
};

enum class EkrStatus { EKR, StrongEKR, NotEKR, EkrNotStrong, Unknown };

std::string to_string(EkrStatus s);

/// A star: the members containing `key` (a t-set of ground elements in element
/// mode, of ambient vertices in vertex mode).
struct Star {
    std::vector<std::size_t> key;
    std::vector<std::size_t> members;
};

struct EkrVerdict {
    EkrStatus status = EkrStatus::Unknown;
    std::size_t star_size = 0;  // largest star
    std::size_t max_size = 0;   // largest intersecting subfamily found
    std::optional<std::vector<std::size_t>> counterexample;     // NotEKR: beats every star
    std::optional<std::vector<std::size_t>> non_star_maximum;   // EkrNotStrong
    /// NotEKR from unequal stars: (smaller key, its size), (larger key, its size).
    std::optional<std::pair<std::pair<std::vector<std::size_t>, std::size_t>,
                            std::pair<std::vector<std::size_t>, std::size_t>>> unequal_stars;
    std::vector<std::vector<std::size_t>> witnesses;  // maxima examined (strong check) or the one maximum
    bool exhaustive = true;
    std::uint64_t node_count = 0;
    std::string note;
};

/// |star(F, x)| for every ground element x.
std::vector<std::pair<std::size_t, std::size_t>> star_sizes(const SetFamily& family);

/// All t-stars under the rule, one per t-subset of the key universe.
std::vector<Star> t_stars(const SetFamily& family, const IntersectionRule& rule);

/// EKR iff the maximum intersecting size equals the star size and every star has that size.
EkrVerdict check_ekr(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options = {});

/// Strong EKR iff EKR and every maximum intersecting subfamily is a star.
/// Stops at the first non-star maximum; Unknown when the witness cap or node budget is hit.
EkrVerdict check_strong_ekr(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options = {});

struct AdmissibleCheck {
    bool admissible = false;
    std::optional<std::size_t> first_failing_window;  // start position of the window
};

/// Whether every cyclic window of k consecutive elements of `order` is a member.
AdmissibleCheck check_admissible_ordering(std::span<const std::size_t> order, const SetFamily& family, std::size_t k);

/// Backtracking search for an admissible cyclic ordering (element 0 first).
/// Throws BudgetExhausted if the budget runs out before a decision.
std::optional<std::vector<std::size_t>> find_admissible_ordering(const SetFamily& family, std::size_t k,
                                                                 std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace ekr
