#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dqw/distribution.hpp"
#include "dqw/ensembles.hpp"
#include "dqw/state.hpp"

namespace dqw {

/// One time step: psi'_k = Q psi_{k-1} + P psi_{k+1}.
///
/// Throws DomainError for a non-unitary coin. In debug builds the new state's
/// norm is checked against drift_budget(step) as well.
WalkState step(const WalkState& state, const Coin& coin);

/// Throws NumericalDriftError if |total - 1| exceeds drift_budget(step).
void check_norm(const WalkState& state);

struct WalkRun {
    QubitState initial;
    std::vector<Coin> coins;
    /// states[j] is the state after j steps when retained, otherwise only the
    /// final state is kept.
    std::vector<WalkState> states;

    const WalkState& final_state() const { return states.back(); }
};

/// Applies coins[0], coins[1], ... in order. The final norm is always checked.
WalkRun evolve(const QubitState& initial, std::span<const Coin> coins, bool retain_states = false);

/// Final state only.
WalkState evolve_state(const QubitState& initial, std::span<const Coin> coins);

/// Draws the initial state and then n coins from Stream(trial_seed), evolves
/// and returns that realization's distribution.
Distribution run_realization(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n,
                             std::uint64_t trial_seed);

}  // namespace dqw
