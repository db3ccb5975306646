#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace dqw {

using Complex = std::complex<double>;

/// Tolerance for unitarity checks on coins and qubit states.
inline constexpr double kUnitTolerance = 1e-12;

/// Small dense complex 2x2 matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    constexpr Complex& operator()(int row, int col) { return m[static_cast<std::size_t>(2 * row + col)]; }
    constexpr const Complex& operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

    static Mat2 identity();
    Mat2 adjoint() const;
    double max_abs_diff(const Mat2& other) const;

    friend Mat2 operator+(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(Complex s, const Mat2& x);
    friend std::array<Complex, 2> operator*(const Mat2& x, const std::array<Complex, 2>& v);
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// One coin U = [[a, b], [c, d]] of the walk.
struct Coin {
    Complex a{1.0};
    Complex b{0.0};
    Complex c{0.0};
    Complex d{1.0};

    static Coin hadamard();
    Complex determinant() const { return a * d - b * c; }
    Mat2 matrix() const;

    friend bool operator==(const Coin&, const Coin&) = default;
};

/// Outcome of one unitarity constraint.
struct Constraint {
    std::string name;
    double residual = 0.0;
    bool passed = false;
};

/// Per-constraint residuals measured by validate_coin.
struct CoinReport {
    std::vector<Constraint> constraints;
    bool valid() const;
    double max_residual() const;
};

/// Checks column and row norms, row orthogonality and the determinant relations
/// c = -det*conj(b), d = det*conj(a). Never throws.
CoinReport validate_coin(const Coin& coin, double tol = kUnitTolerance);

/// Moves-left / moves-right parts of a coin and the auxiliary row-swapped
/// pair: P = [[a,b],[0,0]], Q = [[0,0],[c,d]], R = [[c,d],[0,0]],
/// S = [[0,0],[a,b]].
struct CoinParts {
    Mat2 P, Q, R, S;
};

/// Throws DomainError if the coin fails validation.
CoinParts split_coin(const Coin& coin, double tol = kUnitTolerance);

/// Throws DomainError naming the first failing constraint.
void require_valid(const Coin& coin, double tol = kUnitTolerance);

}  // namespace dqw
