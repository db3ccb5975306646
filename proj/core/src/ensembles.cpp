#include "dqw/ensembles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string format_param(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool is_real(const Coin& c) {
    return c.a.imag() == 0.0 && c.b.imag() == 0.0 && c.c.imag() == 0.0 && c.d.imag() == 0.0;
}

}  // namespace

CoinEnsemble::CoinEnsemble(std::string name, Sampler sampler, std::optional<DeclaredMoments> moments)
    : name_(std::move(name)), sampler_(std::move(sampler)), moments_(moments) {}

CoinEnsemble::CoinEnsemble(std::string name, std::vector<WeightedCoin> support, std::optional<DeclaredMoments> moments)
    : name_(std::move(name)), moments_(moments) {
    if (support.empty()) throw DomainError("finite support must not be empty");
    double total = 0.0;
    real_ = true;
    for (const auto& wc : support) {
        if (!(wc.probability >= 0.0)) throw DomainError("support weights must be non-negative");
        require_valid(wc.coin);
        total += wc.probability;
        real_ = real_ && is_real(wc.coin);
    }
    if (std::abs(total - 1.0) > kUnitTolerance) {
        throw DomainError("support weights sum to " + format_param(total) + ", expected 1");
    }
    support_ = std::move(support);
    sampler_ = [s = *support_](Stream& stream) {
        const double u = stream.uniform();
        double acc = 0.0;
        for (const auto& wc : s) {
            acc += wc.probability;
            if (u < acc) return wc.coin;
        }
        return s.back().coin;
    };
}

Coin CoinEnsemble::draw(std::uint64_t seed, std::uint64_t index) const {
    Stream stream(seed, index);
    return sample(stream);
}

CoinEnsemble CoinEnsemble::with_real_coins(bool real) && {
    real_ = real;
    return std::move(*this);
}

Coin ribeiro_coin(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, s, -c};
}

Coin mackay_coin(double theta) {
    const Complex phase = std::polar(1.0, theta);
    return {kInvSqrt2, kInvSqrt2 * phase, kInvSqrt2 * std::conj(phase), -kInvSqrt2};
}

Coin shapira_coin(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    const double sinc = r < kShapiraCutoff ? 1.0 - r * r / 6.0 : std::sin(r) / r;
    const double cosr = std::cos(r);
    const Complex v11{cosr, z * sinc};
    const Complex v12{y * sinc, x * sinc};
    const Complex v21{-y * sinc, x * sinc};
    const Complex v22{cosr, -z * sinc};
    return {kInvSqrt2 * (v11 + v21), kInvSqrt2 * (v12 + v22), kInvSqrt2 * (v11 - v21), kInvSqrt2 * (v12 - v22)};
}

CoinEnsemble make_ribeiro_uniform() {
    return CoinEnsemble("ribeiro_uniform", [](Stream& s) { return ribeiro_coin(s.uniform(0.0, kTwoPi)); },
                        DeclaredMoments{0.5, 0.5, 0.0})
        .with_real_coins(true);
}

CoinEnsemble make_ribeiro_two_point(double xi) {
    if (!(xi >= 0.0 && xi < std::numbers::pi)) {
        throw DomainError("ribeiro_two_point requires 0 <= xi < pi, got " + format_param(xi));
    }
    return CoinEnsemble("ribeiro_two_point(xi=" + format_param(xi) + ")",
                        std::vector<WeightedCoin>{{ribeiro_coin(xi), 0.5},
                                                  {ribeiro_coin(xi + std::numbers::pi / 2.0), 0.5}},
                        DeclaredMoments{0.5, 0.5, 0.0});
}

CoinEnsemble make_mackay(std::function<double(Stream&)> phase, std::optional<Complex> phase_mean, std::string name) {
    std::optional<DeclaredMoments> moments;
    if (phase_mean) moments = DeclaredMoments{0.5, 0.5, *phase_mean / 2.0};
    return CoinEnsemble(
        std::move(name), [phase = std::move(phase)](Stream& s) { return mackay_coin(phase(s)); }, moments);
}

CoinEnsemble make_mackay_uniform() {
    return make_mackay([](Stream& s) { return s.uniform(0.0, kTwoPi); }, Complex{0.0}, "mackay_uniform");
}

double mu_shapira(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("shapira sigma must be positive, got " + format_param(sigma));
    }
    const double s2 = sigma * sigma;
    return 1.0 / 6.0 + (1.0 - 4.0 * s2) * std::exp(-2.0 * s2) / 3.0;
}

CoinEnsemble make_shapira(double sigma) {
    const double mu = mu_shapira(sigma);  // validates sigma
    return CoinEnsemble(
        "shapira(sigma=" + format_param(sigma) + ")",
        [sigma](Stream& s) {
            const double x = s.normal(0.0, sigma);
            const double y = s.normal(0.0, sigma);
            const double z = s.normal(0.0, sigma);
            return shapira_coin(x, y, z);
        },
        DeclaredMoments{0.5, 0.5, mu});
}

CoinEnsemble make_fixed_hadamard() {
    return CoinEnsemble("fixed_hadamard", std::vector<WeightedCoin>{{Coin::hadamard(), 1.0}},
                        DeclaredMoments{0.5, 0.5, 0.5});
}

const char* to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::satisfied: return "satisfied";
        case ConditionStatus::violated: return "violated";
        case ConditionStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

const MomentEstimate& MomentReport::estimate(const std::string& name) const {
    for (const auto& e : estimates)
        if (e.name == name) return e;
    throw std::out_of_range("no moment named " + name);
}

namespace {

constexpr std::size_t kMoments = 6;
const char* const kMomentNames[kMoments] = {"|a|^2", "|b|^2", "|c|^2", "|d|^2", "a*conj(c)", "b*conj(d)"};

std::array<Complex, kMoments> moment_terms(const Coin& c) {
    return {std::norm(c.a), std::norm(c.b), std::norm(c.c), std::norm(c.d), c.a * std::conj(c.c),
            c.b * std::conj(c.d)};
}

ConditionStatus judge(double deviation, double band) {
    return deviation < std::max(band, kAuditFloor) ? ConditionStatus::satisfied : ConditionStatus::violated;
}

}  // namespace

MomentReport audit_moments(const CoinEnsemble& ensemble, std::uint64_t draws, std::uint64_t seed) {
    if (draws == 0) throw DomainError("audit_moments needs at least one draw");

    MomentReport report;
    report.ensemble = ensemble.name();
    report.draws = draws;
    report.seed = seed;

    std::array<Complex, kMoments> mean{};
    std::array<double, kMoments> se{};

    if (const auto& support = ensemble.finite_support()) {
        report.exact = true;
        for (const auto& wc : *support) {
            const auto terms = moment_terms(wc.coin);
            for (std::size_t i = 0; i < kMoments; ++i) mean[i] += wc.probability * terms[i];
        }
    } else {
        // Welford on the complex terms; the variance of a complex sample is
        // E|x - mean|^2.
        std::array<double, kMoments> m2{};
        Stream stream(seed, 0);
        for (std::uint64_t t = 0; t < draws; ++t) {
            const auto terms = moment_terms(ensemble.sample(stream));
            const double count = static_cast<double>(t + 1);
            for (std::size_t i = 0; i < kMoments; ++i) {
                const Complex delta = terms[i] - mean[i];
                mean[i] += delta / count;
                m2[i] += std::real(std::conj(delta) * (terms[i] - mean[i]));
            }
        }
        if (draws > 1) {
            const double n = static_cast<double>(draws);
            for (std::size_t i = 0; i < kMoments; ++i) se[i] = std::sqrt(std::max(m2[i], 0.0) / (n - 1.0) / n);
        }
    }

    for (std::size_t i = 0; i < kMoments; ++i) report.estimates.push_back({kMomentNames[i], mean[i], se[i]});

    if (!report.exact && draws < 2) return report;  // no variance estimate

    const double dev_a = std::abs(mean[0] - 0.5);
    const double dev_b = std::abs(mean[1] - 0.5);
    const auto sa = judge(dev_a, kAuditSigmas * se[0]);
    const auto sb = judge(dev_b, kAuditSigmas * se[1]);
    report.second_moments = (sa == ConditionStatus::satisfied && sb == ConditionStatus::satisfied)
                                ? ConditionStatus::satisfied
                                : ConditionStatus::violated;
    report.cross_moment = judge(std::abs(mean[4]), kAuditSigmas * se[4]);
    return report;
}

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::none: return "none";
        case CaseLabel::case_I: return "CaseI";
        case CaseLabel::case_II: return "CaseII";
    }
    return "unknown";
}

InitialStateRule InitialStateRule::fixed(Complex alpha, Complex beta) {
    InitialStateRule rule;
    rule.fixed_ = QubitState(alpha, beta);
    rule.name_ = "fixed(" + format_param(alpha.real()) + "," + format_param(alpha.imag()) + "," +
                 format_param(beta.real()) + "," + format_param(beta.imag()) + ")";
    return rule;
}

InitialStateRule InitialStateRule::case_I_default() {
    InitialStateRule rule;
    rule.fixed_ = QubitState(kInvSqrt2, Complex{0.0, kInvSqrt2});
    rule.label_ = CaseLabel::case_I;
    rule.name_ = "caseI";
    return rule;
}

InitialStateRule InitialStateRule::case_II_uniform_phase() {
    InitialStateRule rule;
    rule.kind_ = Kind::random;
    rule.label_ = CaseLabel::case_II;
    rule.name_ = "caseII";
    return rule;
}

QubitState InitialStateRule::generate(Stream& stream) const {
    if (kind_ == Kind::fixed) return fixed_;
    const double theta = stream.uniform(0.0, kTwoPi);
    return QubitState(std::cos(theta), std::sin(theta));
}

const QubitState& InitialStateRule::fixed_state() const {
    if (kind_ != Kind::fixed) throw DomainError("initial rule '" + name_ + "' is random");
    return fixed_;
}

}  // namespace dqw
