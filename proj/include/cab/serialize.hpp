#pragma once

#include "cab/thermo.hpp"
#include "json.hpp"

namespace cab {

// Canonical JSON forms; regions serialize as sorted coordinate lists,
// configurations as region + symbol string in region order.

void to_json(nlohmann::json& j, const Geometry& g);
void from_json(const nlohmann::json& j, Geometry& g);

void to_json(nlohmann::json& j, const Region& r);
Region region_from_json(const nlohmann::json& j, const Geometry& g);

nlohmann::json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const nlohmann::json& j, const Geometry& g);

nlohmann::json full_state_to_json(const FullState& s);
FullState full_state_from_json(const nlohmann::json& j);

nlohmann::json cylinder_to_json(const CylinderSet& s);
CylinderSet cylinder_from_json(const nlohmann::json& j, const Geometry& g);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j, const Geometry& g);

nlohmann::json estimate_to_json(const ProbabilityEstimate& e);

uint64_t state_digest(const FullState& s);

}  // namespace cab
