#pragma once

#include "qdw/measurements.hpp"
#include "qdw/rng.hpp"

namespace qdw {

/// Uniform direction on the unit sphere in R^n.
RVec random_unit_vector(Eigen::Index n, Rng& rng);

/// Random observable satisfying |a| + (d-1)|bloch| <= 1, which is
/// sufficient for spectral validity in any dimension.
DichotomicObservable random_valid_observable(Eigen::Index d, Rng& rng);

MeasurementSet random_measurement_set(Side side, Eigen::Index d,
                                       Eigen::Index n_settings, Rng& rng);

/// Probability vector from normalized exponentials (flat over the simplex).
std::vector<double> random_probabilities(Eigen::Index n, Rng& rng);

} // namespace qdw
