#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqw/ensembles.hpp"

namespace dqw {

inline const std::vector<std::string> kEnsembleNames{"ribeiro_uniform", "ribeiro_two_point", "mackay_uniform",
                                                     "shapira", "fixed_hadamard"};

/// {"ensemble": name, "params": {...}, "seed": uint64}.
struct EnsembleSpec {
    std::string name = "ribeiro_uniform";
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;

    /// Throws ConfigError on unknown names, unknown or missing parameters.
    static EnsembleSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Throws ConfigError for invalid specs (including out-of-domain parameters).
CoinEnsemble build_ensemble(const EnsembleSpec& spec);

/// Initial-state strings:
///   "caseI"              fixed (1/sqrt 2, i/sqrt 2)
///   "caseII"             (cos t, sin t), t uniform
///   "a,b"                fixed real amplitudes
///   "ar,ai,br,bi"        fixed complex amplitudes
/// Throws ConfigError on malformed input or a non-unit state.
InitialStateRule build_initial_state(const std::string& spec);

}  // namespace dqw
