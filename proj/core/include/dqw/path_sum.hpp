#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/distribution.hpp"
#include "dqw/ensembles.hpp"

namespace dqw {

enum class Basis : std::uint8_t { P = 0, Q = 1, R = 2, S = 3 };
inline constexpr std::array<Basis, 4> kAllBasis{Basis::P, Basis::Q, Basis::R, Basis::S};
char to_char(Basis b);

struct ProductEntry {
    Complex scalar;
    Basis result;
};

/// left_m * right_n = scalar * result_n, where left_m is built from `coin`
/// (the m-th coin) and right_n from any coin n.
ProductEntry product_table(Basis left, const Coin& coin, Basis right);

/// Which entry of coin m multiplies the product: 0 -> a, 1 -> b, 2 -> c, 3 -> d.
int product_table_entry(Basis left, Basis right);

/// The matrix of a basis element for a given coin.
Mat2 basis_matrix(Basis b, const Coin& coin);

using Coefficients = std::array<Complex, 4>;  // indexed by Basis

/// Expansion of the transfer operator from the origin to every lattice site at
/// step n in the basis {P_1, Q_1, R_1, S_1} of the first coin.
class PathCoefficients {
public:
    PathCoefficients(std::size_t n, std::vector<Coefficients> sites);

    std::size_t steps() const { return n_; }
    std::size_t size() const { return sites_.size(); }
    long site_of(std::size_t slot) const { return -static_cast<long>(n_) + 2 * static_cast<long>(slot); }
    const Coefficients& at_slot(std::size_t slot) const { return sites_[slot]; }
    /// Throws DomainError for off-lattice sites.
    const Coefficients& at(long site) const;

    /// p P_1 + q Q_1 + r R_1 + s S_1 for the given first coin.
    Mat2 transfer_matrix(long site, const Coin& first) const;
    /// Amplitude at a site: transfer_matrix(site) * phi.
    std::array<Complex, 2> amplitude(long site, const Coin& first, const QubitState& phi) const;

    friend bool operator==(const PathCoefficients&, const PathCoefficients&) = default;

private:
    std::size_t n_;
    std::vector<Coefficients> sites_;
};

/// Forward recursion over the product table. Reads coins[1..n-1] only; the
/// first coin enters solely through the basis. Throws DomainError for n == 0
/// or coins.size() < n.
PathCoefficients coefficients(std::span<const Coin> coins, std::size_t n);

/// Largest |engine amplitude - reconstructed amplitude| over all sites.
double reconstruction_residual(const PathCoefficients& coeffs, std::span<const Coin> coins, const QubitState& phi);

/// binomial(n, (n+k)/2). Throws DomainError on parity or range violation, or
/// when the count does not fit in 64 bits.
std::uint64_t term_count(std::size_t n, long k);

/// Symbolic monomials per basis element at (n, k), e.g. "b4d3c2" for the P
/// coefficient at n = 4, k = 0. Enumerates all 2^(n-1) paths so it is
/// limited to n <= kSymbolicMaxSteps.
inline constexpr std::size_t kSymbolicMaxSteps = 10;
std::map<Basis, std::vector<std::string>> symbolic_monomials(std::size_t n, long k);

/// P(Y_n = k) for the simple symmetric random walk; 0 off the lattice.
double binomial_law(std::size_t n, long k);
Distribution binomial_distribution(std::size_t n);

/// Guard on the number of coin sequences exact_average will enumerate.
inline constexpr double kMaxEnumeration = 1e7;

/// E over coin sequences of the position law, by enumerating every sequence
/// of a discrete ensemble. Requires a fixed initial state. Throws
/// InfeasibleEnumerationError for continuous ensembles, random initial rules,
/// or |support|^n above kMaxEnumeration.
Distribution exact_average(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n);

}  // namespace dqw
