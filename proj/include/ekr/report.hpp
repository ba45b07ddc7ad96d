#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ekr/chains.hpp"
#include "ekr/core.hpp"
#include "ekr/decomp.hpp"
#include "ekr/gbalanced.hpp"
#include "ekr/verify.hpp"

namespace ekr {

using Json = nlohmann::ordered_json;

/// Members as label strings, e.g. {"{0-1 2-3}", ...}.
std::vector<std::string> member_labels(const SetFamily& family, const std::vector<std::size_t>& indices);

/// {status, star_size, max_size, witnesses, exhaustive, node_count, ...}; witnesses as labels.
Json to_json(const EkrVerdict& v, const SetFamily& family);
Json to_json(const ChainVerdict& v);
Json to_json(const CountingReport& r);
Json to_json(const BalancedVerdict& v, const SetFamily& family, const std::vector<std::size_t>& cover);
Json to_json(const DecompositionResult& d);

std::string to_string(DecompositionOutcome o);

}  // namespace ekr
