#include "dqw/coin.hpp"

#include <algorithm>
#include <cmath>

#include "dqw/errors.hpp"

namespace dqw {

Mat2 Mat2::identity() {
    Mat2 out;
    out(0, 0) = 1.0;
    out(1, 1) = 1.0;
    return out;
}

Mat2 Mat2::adjoint() const {
    Mat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
}

double Mat2::max_abs_diff(const Mat2& other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m[i] - other.m[i]));
    return worst;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i] + y.m[i];
    return out;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
    return out;
}

Mat2 operator*(Complex s, const Mat2& x) {
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i] = s * x.m[i];
    return out;
}

std::array<Complex, 2> operator*(const Mat2& x, const std::array<Complex, 2>& v) {
    return {x(0, 0) * v[0] + x(0, 1) * v[1], x(1, 0) * v[0] + x(1, 1) * v[1]};
}

Coin Coin::hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {h, h, h, -h};
}

Mat2 Coin::matrix() const {
    Mat2 out;
    out(0, 0) = a;
    out(0, 1) = b;
    out(1, 0) = c;
    out(1, 1) = d;
    return out;
}

bool CoinReport::valid() const {
    return std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.passed; });
}

double CoinReport::max_residual() const {
    double worst = 0.0;
    for (const auto& c : constraints) worst = std::max(worst, c.residual);
    return worst;
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CoinReport validate_coin(const Coin& coin, double tol) {
    CoinReport report;
    auto add = [&](std::string name, double residual) {
        // NaN residuals must fail, hence the negated comparison.
        report.constraints.push_back({std::move(name), residual, !(residual > tol) && std::isfinite(residual)});
    };

    const bool all_finite = finite(coin.a) && finite(coin.b) && finite(coin.c) && finite(coin.d);
    report.constraints.push_back({"finite", all_finite ? 0.0 : INFINITY, all_finite});

    const auto [a, b, c, d] = coin;
    const Complex det = coin.determinant();
    add("|a|^2+|c|^2=1", std::abs(std::norm(a) + std::norm(c) - 1.0));
    add("|b|^2+|d|^2=1", std::abs(std::norm(b) + std::norm(d) - 1.0));
    add("|a|^2+|b|^2=1", std::abs(std::norm(a) + std::norm(b) - 1.0));
    add("|c|^2+|d|^2=1", std::abs(std::norm(c) + std::norm(d) - 1.0));
    add("a*conj(c)+b*conj(d)=0", std::abs(a * std::conj(c) + b * std::conj(d)));
    add("|det|=1", std::abs(std::abs(det) - 1.0));
    add("c=-det*conj(b)", std::abs(c + det * std::conj(b)));
    add("d=det*conj(a)", std::abs(d - det * std::conj(a)));
    return report;
}

void require_valid(const Coin& coin, double tol) {
    const CoinReport report = validate_coin(coin, tol);
    for (const auto& c : report.constraints) {
        if (!c.passed) {
            throw DomainError("coin is not unitary: " + c.name + " residual " + std::to_string(c.residual));
        }
    }
}

CoinParts split_coin(const Coin& coin, double tol) {
    require_valid(coin, tol);
    CoinParts parts;
    parts.P(0, 0) = coin.a;
    parts.P(0, 1) = coin.b;
    parts.Q(1, 0) = coin.c;
    parts.Q(1, 1) = coin.d;
    parts.R(0, 0) = coin.c;
    parts.R(0, 1) = coin.d;
    parts.S(1, 0) = coin.a;
    parts.S(1, 1) = coin.b;
    return parts;
}

}  // namespace dqw
