#include "dqw/distribution.hpp"

#include <cmath>

#include "dqw/errors.hpp"

namespace dqw {

Distribution::Distribution(std::size_t n, std::vector<double> mass) : n_(n), mass_(std::move(mass)) {
    if (mass_.size() != n_ + 1) {
        throw DomainError("distribution at step " + std::to_string(n_) + " needs " + std::to_string(n_ + 1) +
                          " lattice sites, got " + std::to_string(mass_.size()));
    }
    for (double p : mass_) {
        if (!std::isfinite(p) || p < 0.0) throw DomainError("probability mass must be finite and >= 0");
    }
}

double Distribution::at(long site) const {
    const long n = static_cast<long>(n_);
    if (site < -n || site > n || (site + n) % 2 != 0) return 0.0;
    return mass_[static_cast<std::size_t>((site + n) / 2)];
}

double Distribution::total() const {
    double total = 0.0;
    for (double p : mass_) total += p;
    return total;
}

Distribution distribution_of(const WalkState& state) {
    std::vector<double> mass(state.size());
    const auto left = state.left();
    const auto right = state.right();
    for (std::size_t j = 0; j < mass.size(); ++j) mass[j] = std::norm(left[j]) + std::norm(right[j]);
    Distribution out(state.step(), std::move(mass));
    const double drift = std::abs(out.total() - 1.0);
    if (!(drift <= drift_budget(state.step()))) {
        throw NumericalDriftError("total probability drifted by " + std::to_string(drift) + " after " +
                                  std::to_string(state.step()) + " steps");
    }
    return out;
}

SummaryStats summary_stats(const Distribution& d) {
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const auto k = static_cast<double>(d.site_of(j));
        mean += k * d.mass()[j];
        second += k * k * d.mass()[j];
    }
    return {mean, second - mean * mean};
}

}  // namespace dqw
