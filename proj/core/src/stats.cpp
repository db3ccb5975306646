#include "dqw/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "dqw/engine.hpp"
#include "dqw/errors.hpp"
#include "dqw/path_sum.hpp"

namespace dqw {

namespace {

// Running mean and sum of squared deviations per lattice site.
struct BlockMoments {
    double count = 0.0;
    std::vector<double> mean;
    std::vector<double> m2;
};

// Chan et al. pairwise update.
BlockMoments merge(const BlockMoments& x, const BlockMoments& y) {
    if (x.count == 0.0) return y;
    if (y.count == 0.0) return x;
    BlockMoments out;
    out.count = x.count + y.count;
    out.mean.resize(x.mean.size());
    out.m2.resize(x.mean.size());
    for (std::size_t j = 0; j < x.mean.size(); ++j) {
        const double delta = y.mean[j] - x.mean[j];
        out.mean[j] = x.mean[j] + delta * (y.count / out.count);
        out.m2[j] = x.m2[j] + y.m2[j] + delta * delta * (x.count * y.count / out.count);
    }
    return out;
}

BlockMoments run_block(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n,
                       std::uint64_t first, std::uint64_t last, std::uint64_t master_seed) {
    BlockMoments b;
    b.mean.assign(n + 1, 0.0);
    b.m2.assign(n + 1, 0.0);
    for (std::uint64_t t = first; t < last; ++t) {
        const Distribution d = run_realization(ensemble, init, n, derive_seed(master_seed, t));
        b.count += 1.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double x = d.mass()[j];
            const double delta = x - b.mean[j];
            b.mean[j] += delta / b.count;
            b.m2[j] += delta * (x - b.mean[j]);
        }
    }
    return b;
}

// Fixed-shape binary tree over the block list.
BlockMoments reduce(const std::vector<BlockMoments>& blocks, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return blocks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(reduce(blocks, lo, mid), reduce(blocks, mid, hi));
}

void require_same_steps(const Distribution& d1, const Distribution& d2) {
    if (d1.steps() != d2.steps()) {
        throw DomainError("distributions have different step counts: " + std::to_string(d1.steps()) + " vs " +
                          std::to_string(d2.steps()));
    }
}

}  // namespace

AveragedResult monte_carlo_average(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n,
                                   std::uint64_t trials, std::uint64_t master_seed, unsigned workers) {
    if (trials == 0) throw DomainError("monte_carlo_average needs at least one trial");

    const std::uint64_t block_count = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<BlockMoments> blocks(block_count);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> failures(block_count);

    auto work = [&] {
        for (std::uint64_t b = next++; b < block_count; b = next++) {
            const std::uint64_t first = b * kTrialBlock;
            const std::uint64_t last = std::min(trials, first + kTrialBlock);
            try {
                blocks[b] = run_block(ensemble, init, n, first, last, master_seed);
            } catch (...) {
                failures[b] = std::current_exception();
            }
        }
    };

    const unsigned threads = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::uint64_t>(
                                                                  block_count, 1024)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    const BlockMoments total = reduce(blocks, 0, blocks.size());
    AveragedResult result{Distribution(n, total.mean), std::vector<double>(n + 1, 0.0), trials, master_seed, 0.0,
                          config_digest(ensemble.name(), init.name(), n, master_seed)};
    if (trials > 1) {
        const double count = static_cast<double>(trials);
        for (std::size_t j = 0; j <= n; ++j) {
            result.site_stderr[j] = std::sqrt(std::max(total.m2[j], 0.0) / (count - 1.0) / count);
        }
        result.stderr_max = *std::max_element(result.site_stderr.begin(), result.site_stderr.end());
    }
    const double drift = std::abs(result.mean_distribution.total() - 1.0);
    if (!(drift <= drift_budget(n))) {
        throw NumericalDriftError("averaged distribution drifted by " + std::to_string(drift));
    }
    return result;
}

std::string config_digest(const std::string& ensemble, const std::string& init, std::size_t n, std::uint64_t seed) {
    const std::string text = ensemble + "|" + init + "|" + std::to_string(n) + "|" + std::to_string(seed);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double tv_distance(const Distribution& d1, const Distribution& d2) {
    require_same_steps(d1, d2);
    double sum = 0.0;
    for (std::size_t j = 0; j < d1.size(); ++j) sum += std::abs(d1.mass()[j] - d2.mass()[j]);
    return 0.5 * sum;
}

double max_abs_deviation(const Distribution& d1, const Distribution& d2) {
    require_same_steps(d1, d2);
    double worst = 0.0;
    for (std::size_t j = 0; j < d1.size(); ++j) worst = std::max(worst, std::abs(d1.mass()[j] - d2.mass()[j]));
    return worst;
}

namespace {

VarianceRow row_of(std::size_t n, const Distribution& d) {
    const SummaryStats s = summary_stats(d);
    return {n, s.mean, s.variance};
}

}  // namespace

VarianceScan variance_scan(const WalkerConfig& walker, const std::vector<std::size_t>& n_list) {
    if (n_list.empty()) throw DomainError("variance_scan needs at least one n");
    if (!std::is_sorted(n_list.begin(), n_list.end()) ||
        std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
        throw DomainError("variance_scan needs strictly increasing n values");
    }

    VarianceScan scan;
    if (const auto* det = std::get_if<DeterministicWalker>(&walker)) {
        WalkState state(det->initial);
        for (std::size_t n : n_list) {
            while (state.step() < n) state = step(state, det->coin);
            check_norm(state);
            scan.rows.push_back(row_of(n, distribution_of(state)));
        }
    } else if (const auto* avg = std::get_if<AveragedWalker>(&walker)) {
        for (std::size_t n : n_list) {
            const AveragedResult r = monte_carlo_average(avg->ensemble, avg->init, n, avg->trials, avg->seed,
                                                         avg->workers);
            scan.rows.push_back(row_of(n, r.mean_distribution));
        }
    } else {
        for (std::size_t n : n_list) scan.rows.push_back(row_of(n, binomial_distribution(n)));
    }
    return scan;
}

}  // namespace dqw
