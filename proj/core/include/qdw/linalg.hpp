#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qdw/errors.hpp"
#include "qdw/tolerances.hpp"

namespace qdw {

using complexd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

enum class Subsystem { A, B };

bool all_finite(const CMat& m);
bool all_finite(const RMat& m);

/// Kronecker product; block (i,j) of the result equals a(i,j)*b.
CMat kron(const CMat& a, const CMat& b);

struct EigenSystem {
    RVec values; // descending
    CMat vectors; // columns, unitary; h = V diag(values) V^dagger
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; degenerate groups are ordered deterministically by
/// lexicographic comparison of the phase-canonicalized eigenvectors
/// (first significant component made positive real).
/// Throws NotHermitian if the max-entry asymmetry exceeds HERM_TOL.
EigenSystem hermitian_eigen(const CMat& h);

struct Svd {
    RMat u;
    RVec singular_values; // non-negative, descending
    RMat v; // m = u * diag(singular_values) * v^t
};

/// Full SVD of a real matrix with deterministic ordering and sign
/// canonicalization (paired u/v columns flipped together so the first
/// significant component of u is positive).
Svd svd(const RMat& m);

/// Trace out one subsystem of a (d_a*d_b)x(d_a*d_b) bipartite operator.
CMat partial_trace(const CMat& rho, Eigen::Index d_a, Eigen::Index d_b,
                   Subsystem keep);

/// Determinant via partially pivoted LU. Returns exactly 0 when a pivot
/// falls below PIVOT_REL_TOL relative to the largest entry.
double determinant(const RMat& m);

} // namespace qdw
