#include "dqw/path_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "dqw/engine.hpp"
#include "dqw/errors.hpp"

namespace dqw {

char to_char(Basis b) { return "PQRS"[static_cast<int>(b)]; }

namespace {

using enum Basis;

struct TableCell {
    int entry;  // 0 a, 1 b, 2 c, 3 d
    Basis result;
};

// kTable[left][right]: left_m * right_n = (entry of coin m) * result_n.
constexpr TableCell kTable[4][4] = {
    /* P */ {{0, P}, {1, R}, {0, R}, {1, P}},
    /* Q */ {{2, S}, {3, Q}, {2, Q}, {3, S}},
    /* R */ {{2, P}, {3, R}, {2, R}, {3, P}},
    /* S */ {{0, S}, {1, Q}, {0, Q}, {1, S}},
};

Complex coin_entry(const Coin& coin, int entry) {
    switch (entry) {
        case 0: return coin.a;
        case 1: return coin.b;
        case 2: return coin.c;
        default: return coin.d;
    }
}

std::size_t idx(Basis b) { return static_cast<std::size_t>(b); }

bool on_lattice(std::size_t n, long k) {
    const long nl = static_cast<long>(n);
    return k >= -nl && k <= nl && (k + nl) % 2 == 0;
}

}  // namespace

int product_table_entry(Basis left, Basis right) { return kTable[idx(left)][idx(right)].entry; }

ProductEntry product_table(Basis left, const Coin& coin, Basis right) {
    const TableCell cell = kTable[idx(left)][idx(right)];
    return {coin_entry(coin, cell.entry), cell.result};
}

Mat2 basis_matrix(Basis b, const Coin& coin) {
    Mat2 m;
    switch (b) {
        case P: m(0, 0) = coin.a; m(0, 1) = coin.b; break;
        case Q: m(1, 0) = coin.c; m(1, 1) = coin.d; break;
        case R: m(0, 0) = coin.c; m(0, 1) = coin.d; break;
        case S: m(1, 0) = coin.a; m(1, 1) = coin.b; break;
    }
    return m;
}

PathCoefficients::PathCoefficients(std::size_t n, std::vector<Coefficients> sites) : n_(n), sites_(std::move(sites)) {
    if (sites_.size() != n_ + 1) throw DomainError("path coefficients need n+1 lattice sites");
}

const Coefficients& PathCoefficients::at(long site) const {
    if (!on_lattice(n_, site)) throw DomainError("site " + std::to_string(site) + " is off the lattice");
    return sites_[static_cast<std::size_t>((site + static_cast<long>(n_)) / 2)];
}

Mat2 PathCoefficients::transfer_matrix(long site, const Coin& first) const {
    const Coefficients& c = at(site);
    Mat2 out;
    for (Basis b : kAllBasis) out = out + c[idx(b)] * basis_matrix(b, first);
    return out;
}

std::array<Complex, 2> PathCoefficients::amplitude(long site, const Coin& first, const QubitState& phi) const {
    return transfer_matrix(site, first) * phi.vector();
}

PathCoefficients coefficients(std::span<const Coin> coins, std::size_t n) {
    if (n == 0) throw DomainError("path coefficients are defined for n >= 1");
    if (coins.size() < n) throw DomainError("need at least n coins");

    // Step 1: Xi_1(1,0) = P_1 at k = -1, Xi_1(0,1) = Q_1 at k = +1.
    std::vector<Coefficients> cur(2);
    cur[0][idx(P)] = 1.0;
    cur[1][idx(Q)] = 1.0;

    for (std::size_t step = 2; step <= n; ++step) {
        const Coin& coin = coins[step - 1];
        // Previous slot j (site -(step-1) + 2j) feeds new slot j through P
        // (moving to k-1) and new slot j+1 through Q (moving to k+1).
        std::vector<Coefficients> next(step + 1);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            for (Basis b : kAllBasis) {
                const Complex coef = cur[j][idx(b)];
                if (coef == Complex{}) continue;
                const ProductEntry viaP = product_table(P, coin, b);
                const ProductEntry viaQ = product_table(Q, coin, b);
                next[j][idx(viaP.result)] += viaP.scalar * coef;
                next[j + 1][idx(viaQ.result)] += viaQ.scalar * coef;
            }
        }
        cur = std::move(next);
    }
    return PathCoefficients(n, std::move(cur));
}

double reconstruction_residual(const PathCoefficients& coeffs, std::span<const Coin> coins, const QubitState& phi) {
    const std::size_t n = coeffs.steps();
    if (coins.size() < n) throw DomainError("need at least n coins");
    const WalkState state = evolve_state(phi, coins.first(n));
    double worst = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const long k = state.site_of(j);
        const auto engine = state.amplitude(k);
        const auto rebuilt = coeffs.amplitude(k, coins[0], phi);
        worst = std::max({worst, std::abs(engine[0] - rebuilt[0]), std::abs(engine[1] - rebuilt[1])});
    }
    return worst;
}

std::uint64_t term_count(std::size_t n, long k) {
    if (!on_lattice(n, k)) {
        throw DomainError("term_count needs |k| <= n and n+k even, got n=" + std::to_string(n) + " k=" +
                          std::to_string(k));
    }
    const auto m = static_cast<std::uint64_t>((static_cast<long>(n) + k) / 2);
    const std::uint64_t r = std::min<std::uint64_t>(m, n - m);
    // acc * (n - r + i) is divisible by i; cancel the gcd first so the
    // overflow test is exact.
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        const std::uint64_t g = std::gcd(acc, i);
        const std::uint64_t factor = (n - r + i) / (i / g);
        acc /= g;
        if (acc > std::numeric_limits<std::uint64_t>::max() / factor) {
            throw DomainError("term count overflows 64 bits");
        }
        acc *= factor;
    }
    return acc;
}

std::map<Basis, std::vector<std::string>> symbolic_monomials(std::size_t n, long k) {
    if (n == 0 || n > kSymbolicMaxSteps) throw DomainError("symbolic mode supports 1 <= n <= 10");
    if (!on_lattice(n, k)) throw DomainError("site is off the lattice");

    std::map<Basis, std::set<std::string>> found;
    // Path bit i (0-based step i+1) set means a right move (Q).
    for (std::uint64_t path = 0; path < (1ULL << n); ++path) {
        long site = 0;
        for (std::size_t i = 0; i < n; ++i) site += (path >> i & 1) ? 1 : -1;
        if (site != k) continue;

        Basis acc = (path & 1) ? Q : P;
        std::string monomial;
        for (std::size_t step = 2; step <= n; ++step) {
            const Basis left = (path >> (step - 1) & 1) ? Q : P;
            const TableCell cell = kTable[idx(left)][idx(acc)];
            // Prepend so the highest time index reads first, e.g. "b4d3c2".
            monomial = std::string(1, "abcd"[cell.entry]) + std::to_string(step) + monomial;
            acc = cell.result;
        }
        if (monomial.empty()) monomial = "1";
        found[acc].insert(std::move(monomial));
    }

    std::map<Basis, std::vector<std::string>> out;
    for (Basis b : kAllBasis) out[b] = {found[b].begin(), found[b].end()};
    return out;
}

double binomial_law(std::size_t n, long k) {
    if (!on_lattice(n, k)) return 0.0;
    const auto m = static_cast<std::size_t>((static_cast<long>(n) + k) / 2);
    const std::size_t r = std::min(m, n - m);
    // Interleave each factor (n - r + i)/i >= 1 with one halving; the partial
    // products then stay in [2^-i, 1] and never overflow.
    double p = 1.0;
    for (std::size_t i = 1; i <= r; ++i) {
        p *= static_cast<double>(n - r + i) / static_cast<double>(i);
        p *= 0.5;
    }
    return std::ldexp(p, -static_cast<int>(n - r));
}

Distribution binomial_distribution(std::size_t n) {
    std::vector<double> mass(n + 1);
    for (std::size_t j = 0; j <= n; ++j) mass[j] = binomial_law(n, -static_cast<long>(n) + 2 * static_cast<long>(j));
    return Distribution(n, std::move(mass));
}

namespace {

struct Enumerator {
    const std::vector<WeightedCoin>& support;
    std::size_t n;
    std::vector<double>& accum;

    void visit(const WalkState& state, double weight) {
        if (state.step() == n) {
            const auto left = state.left();
            const auto right = state.right();
            for (std::size_t j = 0; j < accum.size(); ++j)
                accum[j] += weight * (std::norm(left[j]) + std::norm(right[j]));
            return;
        }
        for (const auto& wc : support) {
            if (wc.probability == 0.0) continue;
            visit(step(state, wc.coin), weight * wc.probability);
        }
    }
};

}  // namespace

Distribution exact_average(const CoinEnsemble& ensemble, const InitialStateRule& init, std::size_t n) {
    const auto& support = ensemble.finite_support();
    if (!support) throw InfeasibleEnumerationError("ensemble '" + ensemble.name() + "' has continuous support");
    if (init.kind() != InitialStateRule::Kind::fixed) {
        throw InfeasibleEnumerationError("exact averaging needs a fixed initial state, got '" + init.name() + "'");
    }
    const double sequences = std::pow(static_cast<double>(support->size()), static_cast<double>(n));
    if (sequences > kMaxEnumeration) {
        throw InfeasibleEnumerationError("enumeration of " + std::to_string(sequences) +
                                         " coin sequences exceeds the guard of 1e7");
    }

    std::vector<double> accum(n + 1, 0.0);
    // Depth-first over the sequence tree; shared prefixes are evolved once.
    Enumerator{*support, n, accum}.visit(WalkState(init.fixed_state()), 1.0);
    Distribution out(n, std::move(accum));
    const double drift = std::abs(out.total() - 1.0);
    if (!(drift <= drift_budget(n))) {
        throw NumericalDriftError("averaged distribution drifted by " + std::to_string(drift));
    }
    return out;
}

}  // namespace dqw
