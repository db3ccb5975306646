#include "dqw/engine.hpp"

#include <cmath>

#include "dqw/errors.hpp"

namespace dqw {

void check_norm(const WalkState& state) {
    const double drift = std::abs(state.total_probability() - 1.0);
    if (!(drift <= drift_budget(state.step()))) {
        throw NumericalDriftError("norm drifted by " + std::to_string(drift) + " at step " +
                                  std::to_string(state.step()));
    }
}

WalkState step(const WalkState& state, const Coin& coin) {
    require_valid(coin);
    const auto left = state.left();
    const auto right = state.right();
    const std::size_t n = state.step();

    // Old slot j is site -n + 2j; new slot j is site -(n+1) + 2j. The P part
    // arrives from site k+1 (old slot j), the Q part from k-1 (old slot j-1).
    std::vector<Complex> new_left(n + 2);
    std::vector<Complex> new_right(n + 2);
    for (std::size_t j = 0; j <= n; ++j) {
        new_left[j] = coin.a * left[j] + coin.b * right[j];
        new_right[j + 1] = coin.c * left[j] + coin.d * right[j];
    }
    WalkState next(n + 1, std::move(new_left), std::move(new_right));
#ifndef NDEBUG
    check_norm(next);
#endif
    return next;
}

WalkRun evolve(const QubitState& initial, std::span<const Coin> coins, bool retain_states) {
    WalkRun run{initial, {coins.begin(), coins.end()}, {WalkState(initial)}};
    if (retain_states) run.states.reserve(coins.size() + 1);
    for (const Coin& coin : coins) {
        WalkState next = step(run.states.back(), coin);
        if (retain_states) {
            run.states.push_back(std::move(next));
        } else {
            run.states.back() = std::move(next);
        }
    }
    check_norm(run.final_state());
    return run;
}

WalkState evolve_state(const QubitState& initial, std::span<const Coin> coins) {
    WalkState state(initial);
    for (const Coin& coin : coins) state = step(state, coin);
    check_norm(state);
    return state;
}

Distribution run_realization(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n,
                             std::uint64_t trial_seed) {
    Stream stream(trial_seed);
    const QubitState phi = init.generate(stream);
    WalkState state(phi);
    for (std::size_t j = 0; j < n; ++j) state = step(state, ensemble.sample(stream));
    check_norm(state);
    return distribution_of(state);
}

}  // namespace dqw
