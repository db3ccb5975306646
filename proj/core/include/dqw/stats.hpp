#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dqw/distribution.hpp"
#include "dqw/ensembles.hpp"

namespace dqw {

struct AveragedResult {
    Distribution mean_distribution;
    std::vector<double> site_stderr;  // same lattice as mean_distribution
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double stderr_max = 0.0;
    std::string config_digest;
};

/// Trials are summed in fixed blocks of this many, then blocks are combined
/// pairwise in a fixed tree; the result does not depend on the worker count.
inline constexpr std::uint64_t kTrialBlock = 256;

/// Averages run_realization over trials t = 0..trials-1, trial t using the
/// stream derive_seed(master_seed, t). Throws DomainError for trials == 0.
AveragedResult monte_carlo_average(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n,
                                   std::uint64_t trials, std::uint64_t master_seed, unsigned workers = 1);

/// 64-bit FNV-1a of ensemble name, init name, n and seed, as 16 hex digits.
std::string config_digest(const std::string& ensemble, const std::string& init, std::size_t n, std::uint64_t seed);

/// Half the L1 distance. Throws DomainError when the step counts differ.
double tv_distance(const Distribution& d1, const Distribution& d2);

/// max_k |d1(k) - d2(k)|. Throws DomainError when the step counts differ.
double max_abs_deviation(const Distribution& d1, const Distribution& d2);

struct DeterministicWalker {
    Coin coin;
    QubitState initial;
};

struct AveragedWalker {
    CoinEnsemble ensemble;
    InitialStateRule init;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct ClassicalWalker {};

using WalkerConfig = std::variant<DeterministicWalker, AveragedWalker, ClassicalWalker>;

struct VarianceRow {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
};

struct VarianceScan {
    std::vector<VarianceRow> rows;
};

/// Throws DomainError unless n_list is nonempty and strictly increasing.
VarianceScan variance_scan(const WalkerConfig& walker, const std::vector<std::size_t>& n_list);

}  // namespace dqw
