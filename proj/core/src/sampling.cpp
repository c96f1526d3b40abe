#include "qdw/sampling.hpp"

#include <cmath>

namespace qdw {

RVec random_unit_vector(Eigen::Index n, Rng& rng) {
    RVec v(n);
    double norm2 = 0.0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
        norm2 = v.squaredNorm();
    } while (norm2 < 1e-24);
    return v / std::sqrt(norm2);
}

DichotomicObservable random_valid_observable(Eigen::Index d, Rng& rng) {
    DichotomicObservable o;
    o.d = d;
    o.a = (2.0 * rng.uniform() - 1.0) * rng.uniform();
    const double budget = (1.0 - std::abs(o.a)) / double(d - 1);
    o.bloch = rng.uniform() * budget * random_unit_vector(d * d - 1, rng);
    return o;
}

MeasurementSet random_measurement_set(Side side, Eigen::Index d,
                                       Eigen::Index n_settings, Rng& rng) {
    MeasurementSet set;
    set.side = side;
    for (Eigen::Index i = 0; i < n_settings; ++i)
        set.observables.push_back(random_valid_observable(d, rng));
    return set;
}

std::vector<double> random_probabilities(Eigen::Index n, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

} // namespace qdw
