#include "ekr/verify.hpp"

#include <algorithm>
#include <set>

namespace ekr {

namespace {

constexpr std::uint64_t kMaxStarKeys = 5'000'000;

}  // namespace

std::string to_string(EkrStatus s) {
    switch (s) {
        case EkrStatus::EKR: return "EKR";
        case EkrStatus::StrongEKR: return "StrongEKR";
        case EkrStatus::NotEKR: return "NotEKR";
        case EkrStatus::EkrNotStrong: return "EkrNotStrong";
        case EkrStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::vector<std::pair<std::size_t, std::size_t>> star_sizes(const SetFamily& family) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto n = family.ground().size();
    std::vector<std::size_t> counts(n, 0);
    for (const auto& m : family.members())
        for (auto i : m.indices()) ++counts[i];
    out.reserve(n);
    for (std::size_t x = 0; x < n; ++x) out.emplace_back(x, counts[x]);
    return out;
}

std::vector<Star> t_stars(const SetFamily& family, const IntersectionRule& rule) {
    const auto universe = rule.key_universe(family.ground().size());
    if (binomial(universe, rule.t()) > kMaxStarKeys) throw Error("too many t-star keys to enumerate");
    std::vector<Subset> keys;
    keys.reserve(family.size());
    for (const auto& m : family.members()) keys.push_back(rule.key(m));

    std::vector<Star> stars;
    for_each_combination(universe, rule.t(), [&](std::span<const std::size_t> c) {
        auto t_set = Subset::from_indices(universe, c);
        Star s{std::vector<std::size_t>(c.begin(), c.end()), {}};
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (t_set.is_subset_of(keys[i])) s.members.push_back(i);
        stars.push_back(std::move(s));
    });
    return stars;
}

EkrVerdict check_ekr(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options) {
    if (family.empty()) throw Error("check_ekr needs a nonempty family");
    auto stars = t_stars(family, rule);
    for (const auto& s : stars) {
        if (s.members.empty()) {
            std::string key;
            for (auto k : s.key) key += (key.empty() ? "" : ",") + std::to_string(k);
            throw DegenerateFamily("star key {" + key + "} lies in no member; the family is degenerate");
        }
    }
    auto [lo, hi] = std::minmax_element(stars.begin(), stars.end(),
                                        [](const Star& a, const Star& b) { return a.members.size() < b.members.size(); });

    EkrVerdict v;
    v.star_size = hi->members.size();
    CliqueResult best;
    try {
        best = max_intersecting(family, rule, options, hi->members);
    } catch (const BudgetExhausted& e) {
        v.status = EkrStatus::Unknown;
        v.exhaustive = false;
        v.node_count = e.nodes();
        v.note = e.what();
        return v;
    }
    v.max_size = best.size;
    v.node_count = best.node_count;
    v.witnesses.push_back(best.witness);

    if (best.size > v.star_size) {
        v.status = EkrStatus::NotEKR;
        v.counterexample = best.witness;
        v.note = "an intersecting subfamily is larger than every star";
    } else if (lo->members.size() != hi->members.size()) {
        v.status = EkrStatus::NotEKR;
        v.unequal_stars = std::pair{std::pair{lo->key, lo->members.size()}, std::pair{hi->key, hi->members.size()}};
        v.note = "star sizes differ";
    } else {
        v.status = EkrStatus::EKR;
    }
    return v;
}

EkrVerdict check_strong_ekr(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options) {
    auto v = check_ekr(family, rule, options);
    if (v.status != EkrStatus::EKR) return v;

    std::set<std::vector<std::size_t>> star_sets;
    for (auto& s : t_stars(family, rule))
        if (s.members.size() == v.max_size) star_sets.insert(std::move(s.members));

    auto graph = build_intersection_graph(family, rule);
    v.witnesses.clear();
    bool capped = false;
    SolverOptions rest = options;
    rest.node_budget = options.node_budget > v.node_count ? options.node_budget - v.node_count : 0;
    try {
        v.node_count += for_each_clique_of_size(
            graph.graph, v.max_size,
            [&](std::span<const std::size_t> c) {
                if (v.witnesses.size() == options.witness_cap) {
                    capped = true;
                    return false;
                }
                v.witnesses.emplace_back(c.begin(), c.end());
                if (!star_sets.contains(v.witnesses.back())) {
                    v.non_star_maximum = v.witnesses.back();
                    return false;
                }
                return true;
            },
            rest);
    } catch (const BudgetExhausted& e) {
        v.status = EkrStatus::Unknown;
        v.exhaustive = false;
        v.node_count += e.nodes();
        v.note = e.what();
        return v;
    }

    if (v.non_star_maximum) {
        v.status = EkrStatus::EkrNotStrong;
        v.exhaustive = false;
        v.note = "a maximum intersecting subfamily is not a star";
    } else if (capped) {
        v.status = EkrStatus::Unknown;
        v.exhaustive = false;
        v.note = "witness cap reached before enumeration finished";
    } else {
        v.status = EkrStatus::StrongEKR;
        v.exhaustive = true;
    }
    std::sort(v.witnesses.begin(), v.witnesses.end());
    return v;
}

AdmissibleCheck check_admissible_ordering(std::span<const std::size_t> order, const SetFamily& family, std::size_t k) {
    const auto n = family.ground().size();
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    bool permutation = sorted.size() == n;
    for (std::size_t i = 0; permutation && i < n; ++i) permutation = sorted[i] == i;
    if (!permutation) throw Error("ordering is not a permutation of the ground set");
    if (k < 1 || k > n) throw Error("window length must lie in [1, n]");

    AdmissibleCheck out;
    for (std::size_t start = 0; start < n; ++start) {
        Subset window(n);
        for (std::size_t d = 0; d < k; ++d) window.set(order[(start + d) % n]);
        if (window.count() != k || !family.find(window)) {
            out.first_failing_window = start;
            return out;
        }
    }
    out.admissible = true;
    return out;
}

std::optional<std::vector<std::size_t>> find_admissible_ordering(const SetFamily& family, std::size_t k,
                                                                 std::uint64_t node_budget) {
    const auto n = family.ground().size();
    if (k < 1 || k > n) throw Error("window length must lie in [1, n]");
    std::vector<std::size_t> order{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    std::uint64_t nodes = 0;

    auto window_ok = [&](std::size_t end_pos) {
        Subset w(n);
        for (std::size_t d = 0; d < k; ++d) w.set(order[(end_pos + n - d) % n]);
        return w.count() == k && family.find(w).has_value();
    };

    auto rec = [&](auto&& self) -> bool {
        if (++nodes > node_budget) throw BudgetExhausted(nodes);
        if (order.size() == n) {
            for (std::size_t end = n; end < n + k - 1; ++end)
                if (!window_ok(end % n)) return false;
            return true;
        }
        for (std::size_t x = 1; x < n; ++x) {
            if (used[x]) continue;
            order.push_back(x);
            used[x] = 1;
            if ((order.size() < k || window_ok(order.size() - 1)) && self(self)) return true;
            used[x] = 0;
            order.pop_back();
        }
        return false;
    };
    if (n == 1) return k == 1 && family.find(Subset::from_indices(1, {0})) ? std::optional(order) : std::nullopt;
    if (rec(rec)) return order;
    return std::nullopt;
}

}  // namespace ekr
