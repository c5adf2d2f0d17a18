#pragma once

#include "elicit/properties.hpp"
#include "elicit/representation.hpp"
#include "elicit/scores.hpp"
#include "elicit/solver.hpp"

#include <json.hpp>

#include <string>

namespace elicit {

/// Serializes with every floating-point number printed as %.17g so output is
/// stable and round-trips. Non-finite numbers become null. Object keys keep
/// nlohmann's sorted order. indent < 0 gives a single line.
std::string dump_json(const nlohmann::json &j, int indent = 2);

nlohmann::json to_json(const ArgminInterval &r);
nlohmann::json to_json(const ValidationReport &r);
nlohmann::json to_json(const PropertyReport &r);
nlohmann::json to_json(const HypothesisReport &r);
nlohmann::json to_json(const HypothesisAlignment &a);
nlohmann::json to_json(const RepresentationRow &row);

} // namespace elicit
