#include "dqw/state.hpp"

#include <cmath>

#include "dqw/errors.hpp"

namespace dqw {

QubitState::QubitState(Complex alpha, Complex beta, double tol) : alpha_(alpha), beta_(beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
        throw DomainError("qubit state must have unit norm, got |alpha|^2+|beta|^2 = " + std::to_string(norm));
    }
}

WalkState::WalkState(const QubitState& initial) : left_{initial.alpha()}, right_{initial.beta()} {}

WalkState::WalkState(std::size_t step, std::vector<Complex> left, std::vector<Complex> right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != step + 1 || right_.size() != step + 1) {
        throw DomainError("walk state at step " + std::to_string(step) + " needs " + std::to_string(step + 1) +
                          " slots per chirality");
    }
}

bool WalkState::on_lattice(long site) const {
    const long n = static_cast<long>(step());
    return site >= -n && site <= n && ((site + n) % 2 == 0);
}

std::array<Complex, 2> WalkState::amplitude(long site) const {
    if (!on_lattice(site)) return {Complex{}, Complex{}};
    const auto slot = static_cast<std::size_t>((site + static_cast<long>(step())) / 2);
    return {left_[slot], right_[slot]};
}

double WalkState::total_probability() const {
    double total = 0.0;
    for (std::size_t j = 0; j < left_.size(); ++j) total += std::norm(left_[j]) + std::norm(right_[j]);
    return total;
}

}  // namespace dqw
