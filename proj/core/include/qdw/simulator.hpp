#pragma once

#include <array>
#include <cstdint>

#include "qdw/witness.hpp"

namespace qdw {

/// One prepare-and-measure experiment: i.i.d. state emission, uniformly
/// random setting choice, Born-rule outcomes, and per-setting detection
/// efficiencies (lost rounds are assigned a uniformly random bit).
struct ExperimentConfig {
    DensityMatrix state;
    MeasurementSet alice;
    MeasurementSet bob;
    std::vector<double> alpha; // detection efficiency per Alice setting
    std::vector<double> beta;  // per Bob setting
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;
};

/// Outcome counts n(a,b|x,y). Per-setting round totals are derived, so the
/// bookkeeping invariants hold by construction.
struct TallyTable {
    Eigen::Index n_a = 0;
    Eigen::Index n_b = 0;
    std::vector<std::array<std::array<std::int64_t, 2>, 2>> counts;

    static TallyTable zeros(Eigen::Index n_a, Eigen::Index n_b);

    std::int64_t& at(Eigen::Index x, Eigen::Index y, int a, int b);
    std::int64_t at(Eigen::Index x, Eigen::Index y, int a, int b) const;
    std::int64_t rounds_at(Eigen::Index x, Eigen::Index y) const;
    std::int64_t total_rounds() const;

    /// Tallies merge by addition; chunked (parallel) round generation
    /// reduces through this.
    void merge(const TallyTable& other);
};

/// Run the full experiment. Every round draws from its own substream of
/// (seed, round index), so the tally is bit-identical no matter how the
/// rounds are partitioned across threads.
TallyTable run(const ExperimentConfig& config);

/// Rounds [first_round, last_round) of the same experiment. Tallies of
/// disjoint spans merge to exactly the full-run tally.
TallyTable run(const ExperimentConfig& config, std::int64_t first_round,
               std::int64_t last_round);

/// Plugin estimate: empirical expectations with marginals pooled across
/// the partner's settings, w = det(Q). Dims in the report default to the
/// setting counts (the fixed-scenario convention); pass the true ones
/// where known.
WitnessReport estimate(const TallyTable& t);
WitnessReport estimate(const TallyTable& t, Eigen::Index d_a,
                       Eigen::Index d_b);

struct BootstrapInterval {
    double low = 0.0;
    double high = 0.0;
    double sigma = 0.0;
};

/// Percentile interval from multinomial resampling of each setting's
/// tallies. Deterministic given the seed.
BootstrapInterval bootstrap_ci(const TallyTable& t, int resamples,
                               double level, std::uint64_t seed);

} // namespace qdw
