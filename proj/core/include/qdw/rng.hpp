#pragma once

#include <cstdint>

namespace qdw {

// Counter-based generator built on the splitmix64 finalizer. Substreams are
// derived from (seed, stream) so independent consumers (simulation rounds,
// bootstrap resamples) draw from decorrelated sequences whose output is
// bit-identical regardless of evaluation order. std::* distributions are
// deliberately avoided: their output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();

    /// Uniform integer in [0, n). n must be positive.
    std::int64_t uniform_index(std::int64_t n);

    /// Standard normal via Box-Muller (second value cached).
    double normal();

  private:
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// Exact binomial sample by inverse transform, walking outward from the
/// mode with the pmf ratio recurrence. O(sqrt(n p (1-p))) expected steps.
std::int64_t binomial_draw(Rng& rng, std::int64_t n, double p);

} // namespace qdw
