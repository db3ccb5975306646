#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/random.hpp"
#include "dqw/state.hpp"

namespace dqw {

struct WeightedCoin {
    Coin coin;
    double probability = 0.0;
};

/// Closed-form moments of the first coin, where known.
struct DeclaredMoments {
    double abs_a_sq = 0.5;
    double abs_b_sq = 0.5;
    Complex a_conj_c{0.0};
};

/// An i.i.d. coin law: a sampler plus, for discrete laws, the full support.
class CoinEnsemble {
public:
    using Sampler = std::function<Coin(Stream&)>;

    CoinEnsemble(std::string name, Sampler sampler, std::optional<DeclaredMoments> moments = std::nullopt);
    /// Discrete law. Throws DomainError if the weights are negative or do not
    /// sum to 1, or a support coin is not unitary.
    CoinEnsemble(std::string name, std::vector<WeightedCoin> support, std::optional<DeclaredMoments> moments = std::nullopt);

    const std::string& name() const { return name_; }
    const std::optional<std::vector<WeightedCoin>>& finite_support() const { return support_; }
    const std::optional<DeclaredMoments>& declared_moments() const { return moments_; }
    /// True when every coin has zero imaginary parts.
    bool real_coins() const { return real_; }

    Coin sample(Stream& stream) const { return sampler_(stream); }
    /// Coin number `index` of the draw sequence keyed by `seed`.
    Coin draw(std::uint64_t seed, std::uint64_t index) const;

    CoinEnsemble with_real_coins(bool real) &&;

private:
    std::string name_;
    Sampler sampler_;
    std::optional<std::vector<WeightedCoin>> support_;
    std::optional<DeclaredMoments> moments_;
    bool real_ = false;
};

/// Real rotation-reflection [[cos t, sin t], [sin t, -cos t]].
Coin ribeiro_coin(double theta);
/// (1/sqrt 2) [[1, e^{it}], [e^{-it}, -1]].
Coin mackay_coin(double theta);
/// H * V with V = [[cos R + i z s, (y + i x) s], [(-y + i x) s, cos R - i z s]],
/// R = |(x, y, z)| and s = sin R / R. V is in SU(2). s is replaced by
/// 1 - R^2/6 below kShapiraCutoff.
Coin shapira_coin(double x, double y, double z);
inline constexpr double kShapiraCutoff = 1e-8;

/// Angle uniform on [0, 2 pi).
CoinEnsemble make_ribeiro_uniform();
/// Angle xi or xi + pi/2, probability 1/2 each. Requires 0 <= xi < pi.
CoinEnsemble make_ribeiro_two_point(double xi);
/// Phase drawn from `phase`. `phase_mean` is E(e^{i theta}) when known.
CoinEnsemble make_mackay(std::function<double(Stream&)> phase, std::optional<Complex> phase_mean = std::nullopt,
                         std::string name = "mackay");
CoinEnsemble make_mackay_uniform();
/// Gaussian SU(2) perturbation of the Hadamard coin with per-axis stddev sigma > 0.
CoinEnsemble make_shapira(double sigma);
/// Degenerate law at the Hadamard coin.
CoinEnsemble make_fixed_hadamard();

/// Closed form of E(a conj(c)) for make_shapira: 1/6 + (1/3)(1 - 4 s^2) e^{-2 s^2}.
double mu_shapira(double sigma);

enum class ConditionStatus { satisfied, violated, inconclusive };
const char* to_string(ConditionStatus status);

struct MomentEstimate {
    std::string name;
    Complex value{0.0};
    double std_error = 0.0;
};

/// Sample (or exact, for discrete laws) moments of the coin law, and the two
/// conditions the averaged walk needs: E|a|^2 = E|b|^2 = 1/2 and
/// E(a conj(c)) = 0.
struct MomentReport {
    std::string ensemble;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
    bool exact = false;
    std::vector<MomentEstimate> estimates;  // |a|^2 |b|^2 |c|^2 |d|^2 a*conj(c) b*conj(d)
    ConditionStatus second_moments = ConditionStatus::inconclusive;
    ConditionStatus cross_moment = ConditionStatus::inconclusive;

    const MomentEstimate& estimate(const std::string& name) const;
};

/// Acceptance band: |estimate - target| < 4 stderr.
inline constexpr double kAuditSigmas = 4.0;
/// Floor on the band so a zero-variance estimate is compared to rounding level.
inline constexpr double kAuditFloor = 1e-12;

/// Throws DomainError when draws == 0.
MomentReport audit_moments(const CoinEnsemble& ensemble, std::uint64_t draws, std::uint64_t seed);

enum class CaseLabel { none, case_I, case_II };
const char* to_string(CaseLabel label);

/// How the initial chirality state of each realization is chosen.
class InitialStateRule {
public:
    enum class Kind { fixed, random };

    /// Non-random phi, labelled CaseLabel::none.
    static InitialStateRule fixed(Complex alpha, Complex beta);
    /// phi = (1/sqrt 2, i/sqrt 2).
    static InitialStateRule case_I_default();
    /// phi = (cos t, sin t), t uniform on [0, 2 pi).
    static InitialStateRule case_II_uniform_phase();

    Kind kind() const { return kind_; }
    CaseLabel case_label() const { return label_; }
    const std::string& name() const { return name_; }
    /// For fixed rules this ignores the stream.
    QubitState generate(Stream& stream) const;
    /// The state of a fixed rule; throws DomainError for random rules.
    const QubitState& fixed_state() const;

private:
    InitialStateRule() = default;

    Kind kind_ = Kind::fixed;
    CaseLabel label_ = CaseLabel::none;
    std::string name_;
    QubitState fixed_;
};

}  // namespace dqw
