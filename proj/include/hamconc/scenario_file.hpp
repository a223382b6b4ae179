// scenario_file.hpp
//
// JSON scenario documents:
//
//   {
//     "space":        {"alphabet_sizes": [2, 2]},
//     "distribution": {"kind": "product", "pmfs": [[0.5, 0.5], [0.5, 0.5]]}
//                   | {"kind": "joint", "joint_table": [0.1, 0.2, 0.3, 0.4]},
//     "alpha":        {"weights": [1, 1], "normalize": true},
//     "target":       {"kind": "set", "set": {"points": [[0, 0]]}}
//                   | {"kind": "median" | "gap" | "drop",
//                      "functional": {"type": "table", "values": [...]}
//                                  | {"type": "weighted_sum", "coefficients": [...]}
//                                  | {"type": "distance_to_set", "set": {"points": [...]}},
//                      "drop_family": "infimum",            (optional)
//                      "self_bounding": {"a": 1, "b": 0}},  (optional)
//     "grids":        {"t": [...], "lambda": [...]},        (optional, defaults)
//     "seed":         7,                                    (optional, 0)
//     "caps":         {"enumeration": N, "lipschitz_pairs": N, "lipschitz_samples": N}  (optional)
//   }
#pragma once

#include <stdexcept>
#include <string>

#include "hamconc/verify.hpp"

namespace hamconc {

/// Schema violation; key() names the offending JSON path.
class ScenarioFileError : public std::runtime_error {
public:
    ScenarioFileError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

}  // namespace hamconc
