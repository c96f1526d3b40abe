#pragma once

#include <vector>

#include "qdw/states.hpp"

namespace qdw {

/// Two-outcome observable A = a*I + sqrt(d(d-1)) * (bloch . tau), outcomes
/// read as +1/-1 through the POVM {(I + A)/2, (I - A)/2}. For d=2 this is
/// the familiar a*I + bloch . sigma.
struct DichotomicObservable {
    Eigen::Index d = 2;
    double a = 0.0;
    RVec bloch; // length d*d - 1
};

enum class Side { Alice, Bob };

/// One observable per measurement setting for one party.
struct MeasurementSet {
    Side side = Side::Alice;
    std::vector<DichotomicObservable> observables;
};

/// The Hermitian operator realizing the observable in the given basis.
CMat observable_matrix(const DichotomicObservable& o,
                       const HermitianBasis& basis);

/// Inverse of observable_matrix: read a and bloch off a Hermitian operator.
DichotomicObservable observable_from_matrix(const CMat& m,
                                            const HermitianBasis& basis);

struct ObservableValidation {
    // |a| + (d-1)|bloch| <= 1: sufficient for positivity, not necessary
    // beyond d=2.
    bool norm_constraint_ok = false;
    // Spectrum of the realized operator within [-1, 1]; this decides
    // acceptance.
    bool spectral_ok = false;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;

    bool accepted() const { return spectral_ok; }
};

ObservableValidation validate(const DichotomicObservable& o);

/// Shrink the bloch part by the detection efficiency alpha, leaving the
/// identity coefficient untouched (lost rounds become unbiased coin flips).
DichotomicObservable apply_efficiency(const DichotomicObservable& o,
                                      double alpha);

/// Sharp measurement along a unit direction: a = 0, bloch = dir.
/// The local dimension is inferred from the vector length (d*d - 1).
DichotomicObservable projective_from_direction(const RVec& dir);

struct OptimalPair {
    MeasurementSet alice;
    MeasurementSet bob;
    double w_max = 0.0;
};

/// Witness-maximizing two-qubit measurement pair: unit bloch vectors along
/// the top two left/right singular directions of s_hat, so the covariance
/// matrix comes out as diag(k1, k2) and the witness equals k1*k2.
OptimalPair optimal_pair(const RMat& s_hat);

} // namespace qdw
