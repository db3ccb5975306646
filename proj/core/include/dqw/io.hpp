#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dqw/distribution.hpp"
#include "dqw/ensembles.hpp"
#include "dqw/path_sum.hpp"
#include "dqw/stats.hpp"

namespace dqw {

using nlohmann::json;

/// {"n": n, "mass": [[k, p_k], ...]} sorted by k.
json to_json(const Distribution& d);
/// Inverse of to_json. Missing lattice sites are zero; throws ConfigError on
/// malformed input or off-lattice sites.
Distribution distribution_from_json(const json& j);

/// "k,probability" header then one row per lattice site.
std::string to_csv(const Distribution& d);

/// {"n": n, "sites": [[k, [p_re, p_im, q_re, q_im, r_re, r_im, s_re, s_im]], ...]}.
json to_json(const PathCoefficients& c);
PathCoefficients coefficients_from_json(const json& j);

/// {"n", "trials", "seed", "mean", "stderr_max", "tv_to_binomial", "config_digest"}.
json to_json(const AveragedResult& r);
/// "k,probability,stderr".
std::string to_csv(const AveragedResult& r);

json to_json(const MomentReport& r);

json to_json(const VarianceScan& s);
/// "n,mean,variance,variance_over_n,variance_over_n2".
std::string to_csv(const VarianceScan& s);

}  // namespace dqw
