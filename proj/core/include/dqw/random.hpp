#pragma once

#include <cstdint>
#include <random>

namespace dqw {

/// Mixes a master seed with a stream index (SplitMix64 finalizer applied
/// twice). Used so trial t always receives the same stream regardless of
/// which worker runs it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// A private random stream. The engine is std::mt19937_64; uniform and normal
/// variates are produced here rather than through <random> distributions,
/// whose output is implementation-defined, so results are bit-identical
/// across standard libraries.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}
    Stream(std::uint64_t master, std::uint64_t index) : engine_(derive_seed(master, index)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal by the Box-Muller transform; consumes two uniforms per
    /// call and discards the sine branch.
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace dqw
