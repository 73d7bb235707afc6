#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "infocorr/model.hpp"
#include "infocorr/quantum.hpp"

// JSON schemas shared with the command-line tool:
//   Scenario  {"n", "l", "k", "prior": [..]}
//   Behavior  {"scenario": {..}, "table": [[[..]]]}        x-major, then y, then b
//   Ensemble  {"prior": [..], "states": [[[[re,im],..],..],..]}
//   Witness   {"scenario": {..}, "coefficients": [[[..]]], "bound"?: {"slope","offset"}}
//   Povm      {"effects": [matrix, ..]}
//   Strategy  {"branches": [{"weight", "ensemble", "measurements": [povm, ..]}, ..]}
// Floating point survives a round trip exactly (shortest-round-trip dumping).
// Malformed documents surface as ParseError.

namespace infocorr {

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const QuantumEnsemble& e);
QuantumEnsemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

nlohmann::json povm_to_json(const Povm& p);
Povm povm_from_json(const nlohmann::json& j);

nlohmann::json strategy_to_json(const QuantumStrategy& s);
QuantumStrategy strategy_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// One CSV document: header row plus numeric rows at 12 significant digits,
// '.' decimal separator, '\n' line ends.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace infocorr
