#pragma once

#include <filesystem>

#include "json.hpp"

#include "relqi/state.hpp"

namespace relqi {

/*
 * State specification document.
 *
 * General form:
 *
 *   {
 *     "particles": 2,
 *     "momenta": [ {"mass": 1.0, "p": [0, 0, 1]}, {"mass": 1.0, "p": [0, 0, -1]} ],
 *     "terms": [
 *       {"amplitude": [0.5, 0.0], "config": [[0, "up"], [1, "down"]]},
 *       ...
 *     ]
 *   }
 *
 * Each config entry is (index into "momenta", "up" | "down"), one per
 * particle. Amplitudes are [re, im]; the state is normalized on load and
 * duplicate configurations are summed.
 *
 * Shorthand for the two-particle comparison state:
 *
 *   {"friis": {"alpha": 0.785, "beta": 0.785,
 *              "p_plus": {"mass": 1, "p": [0, 0, 1]},
 *              "p_minus": {"mass": 1, "p": [0, 0, -1]}}}
 *
 * All schema violations throw InvalidArgument.
 */
StateVector state_from_json(const nlohmann::json& doc);
StateVector load_state_file(const std::filesystem::path& path);

/// General-form document; global phase folded into the amplitudes.
nlohmann::json state_to_json(const StateVector& s);

}  // namespace relqi
