#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dqw/coin.hpp"

namespace dqw {

/// Compact per-step rounding budget for the total probability.
inline constexpr double kStepTolerance = 1e-14;

/// Allowed |total - 1| after n steps from a qubit validated to kUnitTolerance.
inline double drift_budget(std::size_t steps) {
    return kUnitTolerance + static_cast<double>(steps) * kStepTolerance;
}

/// Unit-norm chirality state (alpha, beta).
class QubitState {
public:
    QubitState() = default;
    /// Throws DomainError unless |alpha|^2 + |beta|^2 = 1 within tol.
    QubitState(Complex alpha, Complex beta, double tol = kUnitTolerance);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    std::array<Complex, 2> vector() const { return {alpha_, beta_}; }

    friend bool operator==(const QubitState&, const QubitState&) = default;

private:
    Complex alpha_{1.0};
    Complex beta_{0.0};
};

/// Amplitudes of a walk after `step` coin applications.
///
/// The support is the parity lattice k = -n, -n+2, ..., n; slot j holds site
/// k = -n + 2j. Off-lattice sites are implicitly zero and never stored.
class WalkState {
public:
    /// Site-0 state at step 0.
    explicit WalkState(const QubitState& initial);
    /// Raw construction; throws DomainError unless both arrays have step+1 slots.
    WalkState(std::size_t step, std::vector<Complex> left, std::vector<Complex> right);

    std::size_t step() const { return left_.size() - 1; }
    std::size_t size() const { return left_.size(); }

    long site_of(std::size_t slot) const { return -static_cast<long>(step()) + 2 * static_cast<long>(slot); }
    bool on_lattice(long site) const;

    /// (psiL, psiR) at the given site; zero off the lattice.
    std::array<Complex, 2> amplitude(long site) const;

    std::span<const Complex> left() const { return left_; }
    std::span<const Complex> right() const { return right_; }

    double total_probability() const;

    friend bool operator==(const WalkState&, const WalkState&) = default;

private:
    std::vector<Complex> left_;
    std::vector<Complex> right_;
};

}  // namespace dqw
