#include "ekr/report.hpp"

namespace ekr {

std::vector<std::string> member_labels(const SetFamily& family, const std::vector<std::size_t>& indices) {
    std::vector<std::string> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(format_subset(family.member(i), family.ground()));
    return out;
}

namespace {

std::string key_label(const std::vector<std::size_t>& key) {
    std::string s = "{";
    for (std::size_t i = 0; i < key.size(); ++i) s += (i ? " " : "") + std::to_string(key[i]);
    return s + "}";
}

}  // namespace

Json to_json(const EkrVerdict& v, const SetFamily& family) {
    Json j;
    j["status"] = to_string(v.status);
    j["star_size"] = v.star_size;
    j["max_size"] = v.max_size;
    Json w = Json::array();
    for (const auto& x : v.witnesses) w.push_back(member_labels(family, x));
    j["witnesses"] = std::move(w);
    j["exhaustive"] = v.exhaustive;
    j["node_count"] = v.node_count;
    if (v.counterexample) j["counterexample"] = member_labels(family, *v.counterexample);
    if (v.non_star_maximum) j["non_star_maximum"] = member_labels(family, *v.non_star_maximum);
    if (v.unequal_stars) {
        const auto& [small, large] = *v.unequal_stars;
        j["unequal_stars"] = Json::array({Json{{"key", key_label(small.first)}, {"size", small.second}},
                                          Json{{"key", key_label(large.first)}, {"size", large.second}}});
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const ChainVerdict& v) {
    Json j;
    j["is_chain"] = v.is_chain;
    if (v.special_checked) j["is_special"] = v.is_special;
    j["unknown"] = v.unknown;
    Json f = Json::array();
    for (const auto& x : v.failures) f.push_back(Json{{"condition", x.condition}, {"witness", x.witness}});
    j["failures"] = std::move(f);
    j["fiber_size"] = v.fiber_size ? Json(*v.fiber_size) : Json(nullptr);
    j["degree_sum"] = v.degree_sum ? Json(*v.degree_sum) : Json(nullptr);
    j["fibers_checked"] = v.fibers_checked;
    j["node_count"] = v.node_count;
    return j;
}

Json to_json(const CountingReport& r) {
    Json j;
    j["all_hold"] = r.all_hold;
    Json c = Json::array();
    for (const auto& x : r.checks) {
        std::string rhs = std::to_string(x.rhs_num);
        if (x.rhs_den != 1) rhs += "/" + std::to_string(x.rhs_den);
        c.push_back(Json{{"identity", x.identity}, {"probe", x.probe}, {"lhs", x.lhs}, {"rhs", rhs}, {"holds", x.holds}});
    }
    j["checks"] = std::move(c);
    return j;
}

Json to_json(const BalancedVerdict& v, const SetFamily& family, const std::vector<std::size_t>& cover) {
    Json j;
    j["passed"] = v.passed();
    j["transitive_on_ground"] = v.transitive_on_ground;
    j["family_closed"] = v.family_closed;
    j["transitive_on_family"] = v.transitive_on_family;
    j["cover_multiplicity_ok"] = v.cover_multiplicity_ok;
    j["cover_clique_ok"] = v.cover_clique_ok;
    j["j"] = v.j;
    j["r"] = v.r;
    j["cover_max_intersecting"] = v.cover_max_intersecting;
    if (v.multiplicity_witness)
        j["multiplicity_witness"] = Json{{"element", family.ground().label(v.multiplicity_witness->first)},
                                         {"count", v.multiplicity_witness->second}};
    if (v.clique_witness) {
        std::vector<std::size_t> members;
        for (auto pos : *v.clique_witness) members.push_back(cover.at(pos));
        j["clique_witness"] = member_labels(family, members);
    }
    return j;
}

std::string to_string(DecompositionOutcome o) {
    switch (o) {
        case DecompositionOutcome::constructed: return "constructed";
        case DecompositionOutcome::found: return "found";
        case DecompositionOutcome::none_exists: return "none_exists";
    }
    return "?";
}

Json to_json(const DecompositionResult& d) {
    Json j;
    j["ambient"] = d.ambient.descriptor();
    j["outcome"] = to_string(d.outcome);
    j["multiplicity"] = d.multiplicity;
    j["verified"] = d.verified;
    j["block_count"] = d.blocks.size();
    Json b = Json::array();
    for (const auto& s : d.blocks) b.push_back(format_subset(s, d.ambient.ground()));
    j["blocks"] = std::move(b);
    j["node_count"] = d.node_count;
    return j;
}

}  // namespace ekr
