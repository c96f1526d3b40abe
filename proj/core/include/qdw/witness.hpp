#pragma once

#include "qdw/measurements.hpp"

namespace qdw {

enum class WitnessPath { Analytic, Estimated };

/// The covariance matrix Q over all setting pairs and its determinant,
/// the witness value. A nonzero value certifies nonzero discord.
struct WitnessReport {
    RMat q;
    double w = 0.0;
    Eigen::Index d_a = 0;
    Eigen::Index d_b = 0;
    WitnessPath path = WitnessPath::Analytic;
};

struct PairExpectations {
    double joint = 0.0;      // Tr[rho (A (x) B)]
    double marginal_a = 0.0; // Tr[rho_A A]
    double marginal_b = 0.0; // Tr[rho_B B]
};

PairExpectations expectations(const DensityMatrix& rho,
                              const DichotomicObservable& a,
                              const DichotomicObservable& b);

/// Covariance Q_xy = <A (x) B> - <A><B>.
double q_value(const DensityMatrix& rho, const DichotomicObservable& a,
               const DichotomicObservable& b);

/// Full witness evaluation: Q matrix over all setting pairs, w = det(Q).
WitnessReport witness_value(const DensityMatrix& rho,
                            const MeasurementSet& alice,
                            const MeasurementSet& bob);

/// Same witness through the Bloch route: determinant of the matrix with
/// entries (d_a-1)(d_b-1) * a_x^t s_hat b_y (the prefactor is 1 for
/// qubits). Identity coefficients never enter a covariance.
double witness_from_bloch(const RMat& s_hat,
                          const std::vector<RVec>& alice_blochs,
                          const std::vector<RVec>& bob_blochs,
                          Eigen::Index d_a, Eigen::Index d_b);

/// Two-qubit upper bound: product of the two largest singular values of
/// s_hat. Achieved by optimal_pair.
double max_witness_bound(const DensityMatrix& rho);

/// Closed-form two-qubit geometric discord
/// (|s_a|^2 + |T|_F^2 - lmax(s_a s_a^t + T T^t)) / 4. Independent
/// zero-versus-nonzero oracle; zero exactly on classical-quantum states.
double geometric_discord_2q(const DensityMatrix& rho);

} // namespace qdw
