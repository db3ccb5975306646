#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dqw/state.hpp"

namespace dqw {

/// Probability mass over the parity lattice -n, -n+2, ..., n.
class Distribution {
public:
    /// Throws DomainError on a size mismatch or a negative / non-finite mass.
    Distribution(std::size_t n, std::vector<double> mass);

    std::size_t steps() const { return n_; }
    std::size_t size() const { return mass_.size(); }
    long site_of(std::size_t slot) const { return -static_cast<long>(n_) + 2 * static_cast<long>(slot); }

    /// Zero for off-lattice sites.
    double at(long site) const;
    std::span<const double> mass() const { return mass_; }
    double total() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::size_t n_;
    std::vector<double> mass_;
};

struct SummaryStats {
    double mean = 0.0;
    double variance = 0.0;
};

/// p_k = |psiL(k)|^2 + |psiR(k)|^2. Throws NumericalDriftError when the total
/// leaves drift_budget(n).
Distribution distribution_of(const WalkState& state);

SummaryStats summary_stats(const Distribution& d);

}  // namespace dqw
