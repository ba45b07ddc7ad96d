#include "ekr/chains.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ekr {

namespace {

using u128 = unsigned __int128;

IdentityCheck make_check(std::string identity, std::string probe, std::uint64_t lhs, u128 num, u128 den) {
    u128 a = num, b = den;
    while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
    }
    if (a != 0) {
        num /= a;
        den /= a;
    }
    if (num > UINT64_MAX || den > UINT64_MAX) throw Error("counting identity overflows 64 bits");
    IdentityCheck c;
    c.identity = std::move(identity);
    c.probe = std::move(probe);
    c.lhs = lhs;
    c.rhs_num = static_cast<std::uint64_t>(num);
    c.rhs_den = static_cast<std::uint64_t>(den);
    c.holds = c.rhs_den == 1 && c.rhs_num == lhs;
    return c;
}

void add_verdict_failure(ChainVerdict& v, const std::string& condition, const std::string& what, const EkrVerdict& ekr) {
    std::string detail = what + ": " + to_string(ekr.status) + " (star " + std::to_string(ekr.star_size) + ", max " +
                         std::to_string(ekr.max_size) + ")";
    if (!ekr.note.empty()) detail += " " + ekr.note;
    if (ekr.status == EkrStatus::Unknown) v.unknown = true;
    v.failures.push_back({condition, detail});
}

}  // namespace

RelationFamily::RelationFamily(SetFamily lower, SetFamily upper, std::vector<std::vector<RelatedPair>> relations)
    : lower_(std::move(lower)), upper_(std::move(upper)), relations_(std::move(relations)) {
    if (!(lower_.ground() == upper_.ground())) throw Error("lower and upper families must share a ground set");
    if (!lower_.uniform_size() || !upper_.uniform_size())
        throw Error("lower and upper families must be nonempty and uniform");
    if (*lower_.uniform_size() > *upper_.uniform_size()) throw Error("relation needs l <= m");
    if (relations_.empty()) throw Error("relation family must have at least one relation");

    fibers_.assign(relations_.size(), std::vector<std::vector<std::size_t>>(upper_.size()));
    degrees_.assign(relations_.size(), std::vector<std::size_t>(lower_.size(), 0));
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        auto& pairs = relations_[i];
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (auto [l, m] : pairs) {
            if (l >= lower_.size() || m >= upper_.size()) throw Error("relation index out of range");
            if (!lower_.member(l).is_subset_of(upper_.member(m)))
                throw Error("relation " + std::to_string(i) + " is not regular: lower member " + std::to_string(l) +
                            " is not contained in upper member " + std::to_string(m));
            fibers_[i][m].push_back(l);
            ++degrees_[i][l];
        }
    }
}

const std::vector<std::size_t>& RelationFamily::fiber(std::size_t i, std::size_t upper_index) const {
    return fibers_.at(i).at(upper_index);
}

std::size_t RelationFamily::upper_degree(std::size_t i, std::size_t lower_index) const {
    return degrees_.at(i).at(lower_index);
}

RelationFamily inclusion_relation(const SetFamily& lower, const SetFamily& upper) {
    std::vector<RelatedPair> pairs;
    for (std::size_t m = 0; m < upper.size(); ++m)
        for (std::size_t l = 0; l < lower.size(); ++l)
            if (lower.member(l).universe_size() == upper.member(m).universe_size() &&
                lower.member(l).is_subset_of(upper.member(m)))
                pairs.emplace_back(l, m);
    return RelationFamily(lower, upper, {std::move(pairs)});
}

SetFamily reground_fiber(const RelationFamily& rel, std::size_t i, std::size_t upper_index) {
    const auto& m = rel.upper().member(upper_index);
    auto elements = m.indices();
    std::vector<std::string> labels;
    std::vector<std::size_t> position(rel.upper().ground().size(), 0);
    for (std::size_t p = 0; p < elements.size(); ++p) {
        labels.push_back(rel.upper().ground().label(elements[p]));
        position[elements[p]] = p;
    }
    std::vector<Subset> members;
    for (auto l : rel.fiber(i, upper_index)) {
        Subset s(elements.size());
        for (auto e : rel.lower().member(l).indices()) s.set(position[e]);
        members.push_back(std::move(s));
    }
    return canonicalize(std::move(members), GroundSet(std::move(labels)));
}

ChainVerdict check_ekr_chain(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options) {
    ChainVerdict v;
    const auto fiber_rule = IntersectionRule::element(rule.t());

    // (i) upper family is EKR
    try {
        auto up = check_ekr(rel.upper(), rule, options);
        v.node_count += up.node_count;
        if (up.status != EkrStatus::EKR) add_verdict_failure(v, "1.i", "upper family", up);
    } catch (const DegenerateFamily& e) {
        v.failures.push_back({"1.i", std::string("upper family: ") + e.what()});
    }

    // (ii) every fiber is EKR over its own M; identical re-grounded fibers share one verdict
    std::map<std::vector<std::vector<std::size_t>>, std::optional<std::string>> cache;
    std::optional<std::size_t> common_fiber;
    bool fibers_equal = true;
    std::string fiber_mismatch;
    for (std::size_t i = 0; i < rel.relation_count(); ++i) {
        for (std::size_t m = 0; m < rel.upper().size(); ++m) {
            const auto size = rel.fiber(i, m).size();
            if (!common_fiber) common_fiber = size;
            if (size != *common_fiber && fibers_equal) {
                fibers_equal = false;
                fiber_mismatch = "|L(" + std::to_string(i) + ")_M" + std::to_string(m) + "| = " + std::to_string(size) +
                                 " differs from " + std::to_string(*common_fiber);
            }
            if (size == 0) continue;
            auto fiber = reground_fiber(rel, i, m);
            auto key = as_index_lists(fiber);
            key.push_back({fiber.ground().size()});
            auto it = cache.find(key);
            if (it == cache.end()) {
                std::optional<std::string> problem;
                try {
                    auto fv = check_ekr(fiber, fiber_rule, options);
                    v.node_count += fv.node_count;
                    if (fv.status == EkrStatus::Unknown) v.unknown = true;
                    if (fv.status != EkrStatus::EKR)
                        problem = to_string(fv.status) + " (star " + std::to_string(fv.star_size) + ", max " +
                                  std::to_string(fv.max_size) + ")";
                } catch (const DegenerateFamily& e) {
                    problem = e.what();
                }
                ++v.fibers_checked;
                it = cache.emplace(std::move(key), std::move(problem)).first;
            }
            if (it->second)
                v.failures.push_back({"1.ii", "fiber L(" + std::to_string(i) + ")_M" + std::to_string(m) + ": " + *it->second});
        }
    }

    // (iii) all fibers have one common positive size
    if (!fibers_equal) {
        v.failures.push_back({"1.iii", fiber_mismatch});
    } else if (common_fiber.value_or(0) == 0) {
        v.failures.push_back({"1.iii", "fibers are empty"});
    } else {
        v.fiber_size = common_fiber;
    }

    // (iv) Σ_i |M^(i)_L| independent of L
    std::optional<std::size_t> common_degree;
    bool degrees_equal = true;
    for (std::size_t l = 0; l < rel.lower().size(); ++l) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < rel.relation_count(); ++i) sum += rel.upper_degree(i, l);
        if (!common_degree) common_degree = sum;
        if (sum != *common_degree) {
            v.failures.push_back({"1.iv", "lower member " + std::to_string(l) + " has degree sum " + std::to_string(sum) +
                                              ", member 0 has " + std::to_string(*common_degree)});
            degrees_equal = false;
            break;
        }
    }
    if (degrees_equal) v.degree_sum = common_degree;

    std::sort(v.failures.begin(), v.failures.end());
    v.is_chain = v.failures.empty();
    return v;
}

ChainVerdict check_special_chain(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options) {
    auto v = check_ekr_chain(rel, rule, options);
    v.special_checked = true;
    std::vector<ChainFailure> special;

    // (2.i) upper family is strong EKR
    try {
        auto up = check_strong_ekr(rel.upper(), rule, options);
        v.node_count += up.node_count;
        if (up.status != EkrStatus::StrongEKR) {
            ChainVerdict tmp;
            add_verdict_failure(tmp, "2.i", "upper family", up);
            v.unknown |= tmp.unknown;
            special.push_back(tmp.failures.front());
        }
    } catch (const DegenerateFamily& e) {
        special.push_back({"2.i", std::string("upper family: ") + e.what()});
    }

    // (2.ii) kernel: every x in M is the whole intersection M ∩ M' for some M'
    const auto& up = rel.upper();
    for (std::size_t a = 0; a < up.size(); ++a) {
        Subset covered(up.ground().size());
        for (std::size_t b = 0; b < up.size(); ++b) {
            auto meet = up.member(a) & up.member(b);
            if (meet.count() == 1) covered = covered | meet;
        }
        if (!(covered == up.member(a))) {
            std::size_t x = 0;
            for (auto e : up.member(a).indices())
                if (!covered.test(e)) {
                    x = e;
                    break;
                }
            special.push_back({"2.ii", "upper member " + std::to_string(a) + " and element " + up.ground().label(x) +
                                           ": no M' meets it in exactly that element"});
        }
    }

    std::sort(special.begin(), special.end());
    v.is_special = v.is_chain && special.empty();
    v.failures.insert(v.failures.end(), special.begin(), special.end());
    std::sort(v.failures.begin(), v.failures.end());
    return v;
}

bool CountingReport::holds(const std::string& identity) const {
    bool any = false;
    for (const auto& c : checks) {
        if (c.identity != identity) continue;
        any = true;
        if (!c.holds) return false;
    }
    return any;
}

CountingReport check_counting_identities(const RelationFamily& rel, const IntersectionRule& rule, const SolverOptions& options) {
    CountingReport report;
    const auto n = rel.upper().ground().size();
    const auto l = rel.lower_size();
    const auto m = rel.upper_size();
    const auto upper_count = rel.upper().size();
    const auto relations = rel.relation_count();

    auto stars_upper = star_sizes(rel.upper());
    auto stars_lower = star_sizes(rel.lower());

    // (i)
    for (auto [a, count] : stars_upper)
        report.checks.push_back(make_check("i", "a=" + rel.upper().ground().label(a), count,
                                           static_cast<u128>(m) * upper_count, n));

    // (ii)
    auto upper_stars = t_stars(rel.upper(), rule);
    auto largest = std::max_element(upper_stars.begin(), upper_stars.end(), [](const Star& a, const Star& b) {
        return a.members.size() < b.members.size();
    });
    auto best_upper = max_intersecting(rel.upper(), rule, options, largest->members);
    report.checks.push_back(make_check("ii", "upper", best_upper.size, static_cast<u128>(m) * upper_count, n));

    // (iii)
    const auto fiber_rule = IntersectionRule::element(rule.t());
    for (std::size_t i = 0; i < relations; ++i) {
        for (std::size_t M = 0; M < upper_count; ++M) {
            const auto size = rel.fiber(i, M).size();
            std::size_t best = 0;
            if (size > 0) best = max_intersecting(reground_fiber(rel, i, M), fiber_rule, options).size;
            report.checks.push_back(make_check("iii", "M=" + std::to_string(M) + ",i=" + std::to_string(i), best,
                                               static_cast<u128>(l) * size, m));
        }
    }

    // (iv) closed form with the first fiber and the first lower member as representatives
    const std::size_t fiber0 = rel.fiber(0, 0).size();
    std::size_t degree0 = 0;
    for (std::size_t i = 0; i < relations; ++i) degree0 += rel.upper_degree(i, 0);
    for (auto [a, count] : stars_lower) {
        u128 num = static_cast<u128>(l) * fiber0 * upper_count * relations;
        u128 den = static_cast<u128>(n) * degree0;
        if (den == 0) {
            IdentityCheck c;
            c.identity = "iv";
            c.probe = "a=" + rel.lower().ground().label(a);
            c.lhs = count;
            c.rhs_den = 0;
            c.holds = false;
            report.checks.push_back(c);
            continue;
        }
        report.checks.push_back(make_check("iv", "a=" + rel.lower().ground().label(a), count, num, den));
    }

    report.all_hold = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.holds; });
    return report;
}

void write_rel(std::ostream& os, const RelationFamily& rel) {
    os << rel.relation_count() << '\n';
    for (std::size_t i = 0; i < rel.relation_count(); ++i) {
        const auto& pairs = rel.relation(i);
        os << pairs.size() << '\n';
        for (auto [l, m] : pairs) os << l << ' ' << m << '\n';
    }
}

RelationFamily read_rel(std::istream& is, SetFamily lower, SetFamily upper) {
    std::size_t count = 0;
    if (!(is >> count)) throw Error(".rel: malformed header");
    std::vector<std::vector<RelatedPair>> relations(count);
    for (auto& r : relations) {
        std::size_t pairs = 0;
        if (!(is >> pairs)) throw Error(".rel: missing pair count");
        r.resize(pairs);
        for (auto& [l, m] : r)
            if (!(is >> l >> m)) throw Error(".rel: truncated pair list");
    }
    return RelationFamily(std::move(lower), std::move(upper), std::move(relations));
}

}  // namespace ekr
