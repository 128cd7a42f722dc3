#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "decoy/bounds.hpp"
#include "decoy/model.hpp"

namespace decoy {

// Decimal string with 30 significant digits; high-precision values survive a
// JSON round trip without binary-float loss.
std::string format_real(const real& v);
real parse_real(const std::string& s);

nlohmann::json report_to_json(const BoundsReport& rep, const IntensitySet& set);
BoundsReport report_from_json(const nlohmann::json& j);

}  // namespace decoy
