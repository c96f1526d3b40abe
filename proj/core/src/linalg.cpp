#include "qdw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qdw {

namespace {

constexpr double CANON_TOL = 1e-12;

// Rotate a complex column so its first significant entry is positive real.
void canonicalize_phase(Eigen::Ref<CVec> col) {
    for (Eigen::Index k = 0; k < col.size(); ++k) {
        double mag = std::abs(col(k));
        if (mag > CANON_TOL) {
            col *= std::conj(col(k)) / mag;
            return;
        }
    }
}

bool lex_less(const CVec& a, const CVec& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        double ar = a(k).real(), br = b(k).real();
        if (std::abs(ar - br) > CANON_TOL) return ar < br;
        double ai = a(k).imag(), bi = b(k).imag();
        if (std::abs(ai - bi) > CANON_TOL) return ai < bi;
    }
    return false;
}

bool lex_less(const RVec& a, const RVec& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (std::abs(a(k) - b(k)) > CANON_TOL) return a(k) < b(k);
    }
    return false;
}

} // namespace

bool all_finite(const CMat& m) {
    return m.allFinite();
}

bool all_finite(const RMat& m) {
    return m.allFinite();
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

EigenSystem hermitian_eigen(const CMat& h) {
    if (h.rows() != h.cols())
        throw DimensionMismatch("hermitian_eigen: matrix is not square");
    double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > HERM_TOL)
        throw NotHermitian("hermitian_eigen: max-entry asymmetry " +
                           std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    const Eigen::Index n = h.rows();
    RVec vals = solver.eigenvalues();
    CMat vecs = solver.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i)
        canonicalize_phase(vecs.col(i));

    // Descending, with lexicographic vector order inside degenerate groups.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (std::abs(vals(a) - vals(b)) > CANON_TOL) return vals(a) > vals(b);
        return lex_less(CVec(vecs.col(a)), CVec(vecs.col(b)));
    });

    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = vals(idx[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = vecs.col(idx[static_cast<std::size_t>(i)]);
    }
    return out;
}

Svd svd(const RMat& m) {
    Eigen::JacobiSVD<RMat> solver(m,
                                  Eigen::ComputeFullU | Eigen::ComputeFullV);
    Svd out;
    out.u = solver.matrixU();
    out.v = solver.matrixV();
    out.singular_values = solver.singularValues();

    const Eigen::Index k = out.singular_values.size();
    // Flip paired columns together so the reconstruction is preserved.
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index r = 0; r < out.u.rows(); ++r) {
            if (std::abs(out.u(r, i)) > CANON_TOL) {
                if (out.u(r, i) < 0) {
                    out.u.col(i) *= -1.0;
                    out.v.col(i) *= -1.0;
                }
                break;
            }
        }
    }
    // Unpaired trailing columns (rectangular input) get the same treatment
    // independently; they only span null directions.
    auto fix_tail = [](RMat& q, Eigen::Index from) {
        for (Eigen::Index i = from; i < q.cols(); ++i) {
            for (Eigen::Index r = 0; r < q.rows(); ++r) {
                if (std::abs(q(r, i)) > CANON_TOL) {
                    if (q(r, i) < 0) q.col(i) *= -1.0;
                    break;
                }
            }
        }
    };
    fix_tail(out.u, k);
    fix_tail(out.v, k);

    // Eigen already sorts descending; reorder degenerate groups
    // deterministically, permuting u and v together.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        double sa = out.singular_values(a), sb = out.singular_values(b);
        if (std::abs(sa - sb) > CANON_TOL) return sa > sb;
        return lex_less(RVec(out.u.col(a)), RVec(out.u.col(b)));
    });
    RVec s2(k);
    RMat u2 = out.u, v2 = out.v;
    for (Eigen::Index i = 0; i < k; ++i) {
        s2(i) = out.singular_values(idx[static_cast<std::size_t>(i)]);
        u2.col(i) = out.u.col(idx[static_cast<std::size_t>(i)]);
        v2.col(i) = out.v.col(idx[static_cast<std::size_t>(i)]);
    }
    out.singular_values = s2;
    out.u = u2;
    out.v = v2;
    return out;
}

CMat partial_trace(const CMat& rho, Eigen::Index d_a, Eigen::Index d_b,
                   Subsystem keep) {
    if (d_a < 1 || d_b < 1 || rho.rows() != d_a * d_b ||
        rho.cols() != d_a * d_b)
        throw DimensionMismatch("partial_trace: operator is not (d_a*d_b)^2");

    if (keep == Subsystem::A) {
        CMat out = CMat::Zero(d_a, d_a);
        for (Eigen::Index i = 0; i < d_a; ++i)
            for (Eigen::Index j = 0; j < d_a; ++j)
                for (Eigen::Index k = 0; k < d_b; ++k)
                    out(i, j) += rho(i * d_b + k, j * d_b + k);
        return out;
    }
    CMat out = CMat::Zero(d_b, d_b);
    for (Eigen::Index i = 0; i < d_b; ++i)
        for (Eigen::Index j = 0; j < d_b; ++j)
            for (Eigen::Index k = 0; k < d_a; ++k)
                out(i, j) += rho(k * d_b + i, k * d_b + j);
    return out;
}

double determinant(const RMat& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("determinant: matrix is not square");
    if (m.rows() == 0) return 1.0;
    double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;

    Eigen::PartialPivLU<RMat> lu(m);
    RVec pivots = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < pivots.size(); ++i)
        if (std::abs(pivots(i)) < PIVOT_REL_TOL * scale) return 0.0;

    double det = static_cast<double>(lu.permutationP().determinant());
    for (Eigen::Index i = 0; i < pivots.size(); ++i) det *= pivots(i);
    return det;
}

} // namespace qdw
