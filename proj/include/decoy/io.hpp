#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "decoy/model.hpp"

namespace decoy {

struct Dataset {
    IntensitySet set;
    MeasurementRecord rec;
    std::optional<ChannelParams> model;
    std::optional<real> e_det;
    std::optional<real> p_dark;
};

// JSON is the canonical schema; CSV (columns mu,Q[,E] plus key=value sidecar
// lines) is a convenience. Dispatch is by file extension, defaulting to CSV.
Dataset parse_input(const std::string& path);

Dataset dataset_from_json(const nlohmann::json& j);
nlohmann::json dataset_to_json(const Dataset& d);
std::string dataset_to_csv(const Dataset& d);

}  // namespace decoy
