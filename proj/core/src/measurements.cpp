#include "qdw/measurements.hpp"

#include <cmath>

namespace qdw {

namespace {

void check_observable_shape(const DichotomicObservable& o) {
    if (o.d < 2) throw InvalidDimension("observable: d must be >= 2");
    if (o.bloch.size() != o.d * o.d - 1)
        throw DimensionMismatch("observable: bloch length must be d*d - 1");
}

} // namespace

CMat observable_matrix(const DichotomicObservable& o,
                       const HermitianBasis& basis) {
    check_observable_shape(o);
    if (basis.d != o.d)
        throw DimensionMismatch("observable_matrix: basis dimension mismatch");

    const double scale = std::sqrt(double(o.d) * double(o.d - 1));
    CMat m = o.a * CMat::Identity(o.d, o.d);
    for (Eigen::Index i = 0; i < o.bloch.size(); ++i)
        m += scale * o.bloch(i) * basis.ops[static_cast<std::size_t>(i + 1)];
    return m;
}

DichotomicObservable observable_from_matrix(const CMat& m,
                                            const HermitianBasis& basis) {
    const Eigen::Index d = basis.d;
    if (m.rows() != d || m.cols() != d)
        throw DimensionMismatch("observable_from_matrix: dimension mismatch");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > HERM_TOL)
        throw NotHermitian("observable_from_matrix: operator is not Hermitian");

    DichotomicObservable o;
    o.d = d;
    o.a = m.trace().real() / double(d);
    o.bloch.resize(d * d - 1);
    const double scale = std::sqrt(double(d) * double(d - 1));
    for (Eigen::Index i = 0; i < o.bloch.size(); ++i)
        o.bloch(i) =
            (basis.ops[static_cast<std::size_t>(i + 1)] * m).trace().real() /
            scale;
    return o;
}

ObservableValidation validate(const DichotomicObservable& o) {
    check_observable_shape(o);
    ObservableValidation report;
    report.norm_constraint_ok =
        std::abs(o.a) + double(o.d - 1) * o.bloch.norm() <= 1.0 + EQ_TOL;

    CMat m = observable_matrix(o, gell_mann_basis(o.d));
    EigenSystem es = hermitian_eigen(m);
    report.max_eigenvalue = es.values(0);
    report.min_eigenvalue = es.values(es.values.size() - 1);
    report.spectral_ok = report.max_eigenvalue <= 1.0 + PSD_TOL &&
                         report.min_eigenvalue >= -1.0 - PSD_TOL;
    return report;
}

DichotomicObservable apply_efficiency(const DichotomicObservable& o,
                                      double alpha) {
    check_observable_shape(o);
    if (alpha < 0.0 || alpha > 1.0)
        throw OutOfRange("apply_efficiency: alpha must lie in [0, 1]");
    DichotomicObservable out = o;
    out.bloch = alpha * o.bloch;
    return out;
}

DichotomicObservable projective_from_direction(const RVec& dir) {
    const auto n = dir.size();
    auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(double(n + 1))));
    if (d < 2 || d * d - 1 != n)
        throw DimensionMismatch(
            "projective_from_direction: length must be d*d - 1 for some d >= 2");
    if (std::abs(dir.norm() - 1.0) > 1e-10)
        throw NotUnit("projective_from_direction: |dir| != 1");

    DichotomicObservable o;
    o.d = d;
    o.a = 0.0;
    o.bloch = dir;
    return o;
}

OptimalPair optimal_pair(const RMat& s_hat) {
    if (s_hat.rows() != 3 || s_hat.cols() != 3)
        throw UnsupportedDimension("optimal_pair: s_hat must be 3x3 (two-qubit)");

    Svd dec = svd(s_hat);
    OptimalPair out;
    out.alice.side = Side::Alice;
    out.bob.side = Side::Bob;
    for (int x = 0; x < 2; ++x) {
        DichotomicObservable oa;
        oa.d = 2;
        oa.a = 0.0;
        oa.bloch = dec.u.col(x);
        out.alice.observables.push_back(std::move(oa));

        DichotomicObservable ob;
        ob.d = 2;
        ob.a = 0.0;
        ob.bloch = dec.v.col(x);
        out.bob.observables.push_back(std::move(ob));
    }
    // With a consistent u/v pair, Q_xy = u_x . (s_hat v_y) = k_y delta_xy,
    // so det Q = k1 k2 >= 0 without any extra sign flip.
    out.w_max = dec.singular_values(0) * dec.singular_values(1);
    return out;
}

} // namespace qdw
