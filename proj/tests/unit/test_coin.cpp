#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <dqw/coin.hpp>
#include <dqw/errors.hpp>

#include "oracles.hpp"

namespace dqw {
namespace {

const double kH = 1.0 / std::sqrt(2.0);

TEST(ValidateCoin, HadamardPassesEveryConstraint) {
    const CoinReport report = validate_coin(Coin::hadamard());
    EXPECT_TRUE(report.valid());
    EXPECT_EQ(report.constraints.size(), 9u);
    EXPECT_LT(report.max_residual(), 1e-15);
}

TEST(ValidateCoin, FlagsNonUnitaryMatrix) {
    // [[1,1],[0,0]]: both column norms are 1, but the first row has norm^2 2
    // and the determinant vanishes.
    const CoinReport report = validate_coin(Coin{1.0, 1.0, 0.0, 0.0});
    EXPECT_FALSE(report.valid());
    std::map<std::string, Constraint> by_name;
    for (const auto& c : report.constraints) by_name[c.name] = c;
    EXPECT_TRUE(by_name.at("|a|^2+|c|^2=1").passed);
    EXPECT_TRUE(by_name.at("|b|^2+|d|^2=1").passed);
    EXPECT_FALSE(by_name.at("|a|^2+|b|^2=1").passed);
    EXPECT_DOUBLE_EQ(by_name.at("|a|^2+|b|^2=1").residual, 1.0);
    EXPECT_FALSE(by_name.at("|det|=1").passed);
    EXPECT_DOUBLE_EQ(by_name.at("|det|=1").residual, 1.0);
}

TEST(ValidateCoin, FlagsColumnNormViolation) {
    const CoinReport report = validate_coin(Coin{1.0, 0.0, 0.0, 2.0});
    std::map<std::string, Constraint> by_name;
    for (const auto& c : report.constraints) by_name[c.name] = c;
    EXPECT_FALSE(by_name.at("|b|^2+|d|^2=1").passed);
    EXPECT_DOUBLE_EQ(by_name.at("|b|^2+|d|^2=1").residual, 3.0);
}

TEST(ValidateCoin, RealRotationAtPiOverThree) {
    const double t = std::numbers::pi / 3.0;
    EXPECT_TRUE(validate_coin(Coin{std::cos(t), std::sin(t), std::sin(t), -std::cos(t)}).valid());
}

TEST(ValidateCoin, NonFiniteEntriesFail) {
    const CoinReport report = validate_coin(Coin{NAN, 0.0, 0.0, 1.0});
    EXPECT_FALSE(report.valid());
    EXPECT_FALSE(report.constraints.front().passed);
}

TEST(ValidateCoin, DeterminantRelationsHoldForRandomUnitaries) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const Coin u = oracle::random_coin(rng);
        const CoinReport report = validate_coin(u);
        ASSERT_TRUE(report.valid()) << i;
        const Complex det = u.determinant();
        EXPECT_LT(std::abs(u.c + det * std::conj(u.b)), kUnitTolerance);
        EXPECT_LT(std::abs(u.d - det * std::conj(u.a)), kUnitTolerance);
    }
}

TEST(ValidateCoin, RelativePhaseBreaksDeterminantRelation) {
    // Unit columns but rows not orthogonal.
    const CoinReport report = validate_coin(Coin{kH, kH, kH, kH});
    EXPECT_FALSE(report.valid());
}

TEST(SplitCoin, HadamardParts) {
    const CoinParts parts = split_coin(Coin::hadamard());
    EXPECT_DOUBLE_EQ(parts.P(0, 0).real(), kH);
    EXPECT_DOUBLE_EQ(parts.P(0, 1).real(), kH);
    EXPECT_EQ(parts.P(1, 0), Complex{});
    EXPECT_EQ(parts.P(1, 1), Complex{});
    EXPECT_EQ(parts.Q(0, 0), Complex{});
    EXPECT_DOUBLE_EQ(parts.Q(1, 0).real(), kH);
    EXPECT_DOUBLE_EQ(parts.Q(1, 1).real(), -kH);
    EXPECT_DOUBLE_EQ(parts.R(0, 0).real(), kH);
    EXPECT_DOUBLE_EQ(parts.R(0, 1).real(), -kH);
    EXPECT_EQ(parts.R(1, 0), Complex{});
    EXPECT_DOUBLE_EQ(parts.S(1, 0).real(), kH);
    EXPECT_DOUBLE_EQ(parts.S(1, 1).real(), kH);
    EXPECT_EQ(parts.S(0, 0), Complex{});
}

TEST(SplitCoin, RejectsInvalidCoin) { EXPECT_THROW(split_coin(Coin{1.0, 1.0, 0.0, 0.0}), DomainError); }

TEST(SplitCoin, PartsSatisfyOrthogonalityRelations) {
    std::mt19937_64 rng(5);
    const Mat2 zero{};
    for (int i = 0; i < 1000; ++i) {
        const Coin u = oracle::random_coin(rng);
        const CoinParts p = split_coin(u);
        EXPECT_EQ(p.P + p.Q, u.matrix());
        EXPECT_LT((p.P * p.P.adjoint() + p.Q * p.Q.adjoint()).max_abs_diff(Mat2::identity()), kUnitTolerance);
        EXPECT_LT((p.P.adjoint() * p.P + p.Q.adjoint() * p.Q).max_abs_diff(Mat2::identity()), kUnitTolerance);
        EXPECT_LT((p.P * p.Q.adjoint()).max_abs_diff(zero), kUnitTolerance);
        EXPECT_LT((p.Q * p.P.adjoint()).max_abs_diff(zero), kUnitTolerance);
        EXPECT_LT((p.Q.adjoint() * p.P).max_abs_diff(zero), kUnitTolerance);
        EXPECT_LT((p.P.adjoint() * p.Q).max_abs_diff(zero), kUnitTolerance);
    }
}

}  // namespace
}  // namespace dqw
