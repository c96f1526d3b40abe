#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdw/linalg.hpp"

namespace qdw {

/// Orthonormal local operator basis: ops[0] = I/sqrt(d), followed by the
/// normalized generalized Gell-Mann matrices (Tr[t_i t_j] = delta_ij).
struct HermitianBasis {
    Eigen::Index d = 0;
    std::vector<CMat> ops;
};

/// Fixed enumeration: symmetric pairs (j,k) with j<k in lexicographic
/// order, antisymmetric pairs in the same order, then diagonal operators
/// by increasing rank. d=2 yields {I, sx, sy, sz}/sqrt(2).
HermitianBasis gell_mann_basis(Eigen::Index d);

/// Names of violated density-matrix invariants, empty when valid.
/// Checked: dimension, finite-entries, hermitian, unit-trace,
/// positive-semidefinite.
std::vector<std::string> density_invariant_failures(Eigen::Index d_a,
                                                    Eigen::Index d_b,
                                                    const CMat& m);

/// Bipartite density matrix on C^{d_a} x C^{d_b}. Validates on
/// construction (Hermitian within HERM_TOL, eigenvalues >= -PSD_TOL,
/// unit trace within HERM_TOL); immutable afterwards.
class DensityMatrix {
  public:
    DensityMatrix(Eigen::Index d_a, Eigen::Index d_b, CMat matrix);

    Eigen::Index d_a() const { return d_a_; }
    Eigen::Index d_b() const { return d_b_; }
    const CMat& matrix() const { return matrix_; }
    Eigen::Index dim() const { return d_a_ * d_b_; }

  private:
    Eigen::Index d_a_;
    Eigen::Index d_b_;
    CMat matrix_;
};

/// p |psi-><psi-| + (1-p)/4 I_4, with |psi-> = (|01> - |10>)/sqrt(2).
DensityMatrix werner(double p);

/// Classical-quantum (zero-discord) state
/// sum_i p_i U|i><i|U^dagger (x) rho_i with U = alice_basis.
DensityMatrix classical_quantum(const std::vector<double>& probs,
                                const std::vector<CMat>& local_states,
                                const CMat& alice_basis);

/// Same, with Alice's basis fixed to the computational one.
DensityMatrix classical_quantum(const std::vector<double>& probs,
                                const std::vector<CMat>& local_states);

/// Ginibre-induced random state: G G^dagger / Tr[G G^dagger] for a seeded
/// complex-Gaussian (d_a*d_b) x rank matrix G. Bit-identical per seed.
DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, std::uint64_t seed);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
CMat random_unitary(Eigen::Index d, std::uint64_t seed);

/// Local vectors, correlation tensor, and the derived matrix
/// s_hat = t - s_a s_b^t whose rank deficiency marks zero discord.
struct BlochData {
    RVec s_a;
    RVec s_b;
    RMat t;
    RMat s_hat;
};

/// Coordinates of rho in the given operator bases, normalized so that
/// |s_a|, |s_b| <= 1 for valid states. For d=2 the values coincide with
/// the plain Pauli expansion (s_a(i) = Tr[rho_A sigma_i],
/// t(i,j) = Tr[rho sigma_i (x) sigma_j]).
BlochData bloch_decompose(const DensityMatrix& rho,
                          const HermitianBasis& basis_a,
                          const HermitianBasis& basis_b);
BlochData bloch_decompose(const DensityMatrix& rho);

/// Inverse of bloch_decompose; output is validated.
DensityMatrix bloch_reconstruct(const BlochData& b,
                                const HermitianBasis& basis_a,
                                const HermitianBasis& basis_b);

/// t - s_a s_b^t.
RMat s_matrix(const BlochData& b);

} // namespace qdw
