#include "qdw/witness.hpp"

namespace qdw {

PairExpectations expectations(const DensityMatrix& rho,
                              const DichotomicObservable& a,
                              const DichotomicObservable& b) {
    if (a.d != rho.d_a() || b.d != rho.d_b())
        throw DimensionMismatch("expectations: observable/state dimensions");

    const HermitianBasis basis_a = gell_mann_basis(rho.d_a());
    const HermitianBasis basis_b = gell_mann_basis(rho.d_b());
    const CMat ma = observable_matrix(a, basis_a);
    const CMat mb = observable_matrix(b, basis_b);

    PairExpectations out;
    out.joint = (rho.matrix() * kron(ma, mb)).trace().real();
    out.marginal_a =
        (partial_trace(rho.matrix(), rho.d_a(), rho.d_b(), Subsystem::A) * ma)
            .trace()
            .real();
    out.marginal_b =
        (partial_trace(rho.matrix(), rho.d_a(), rho.d_b(), Subsystem::B) * mb)
            .trace()
            .real();
    return out;
}

double q_value(const DensityMatrix& rho, const DichotomicObservable& a,
               const DichotomicObservable& b) {
    PairExpectations e = expectations(rho, a, b);
    return e.joint - e.marginal_a * e.marginal_b;
}

WitnessReport witness_value(const DensityMatrix& rho,
                            const MeasurementSet& alice,
                            const MeasurementSet& bob) {
    const auto n = static_cast<Eigen::Index>(alice.observables.size());
    if (n == 0 || bob.observables.size() != alice.observables.size())
        throw SettingCountMismatch("witness_value: setting counts differ");

    const HermitianBasis basis_a = gell_mann_basis(rho.d_a());
    const HermitianBasis basis_b = gell_mann_basis(rho.d_b());
    const CMat rho_a =
        partial_trace(rho.matrix(), rho.d_a(), rho.d_b(), Subsystem::A);
    const CMat rho_b =
        partial_trace(rho.matrix(), rho.d_a(), rho.d_b(), Subsystem::B);

    std::vector<CMat> mats_a, mats_b;
    std::vector<double> marg_a, marg_b;
    for (const auto& o : alice.observables) {
        if (o.d != rho.d_a())
            throw DimensionMismatch("witness_value: Alice observable dimension");
        mats_a.push_back(observable_matrix(o, basis_a));
        marg_a.push_back((rho_a * mats_a.back()).trace().real());
    }
    for (const auto& o : bob.observables) {
        if (o.d != rho.d_b())
            throw DimensionMismatch("witness_value: Bob observable dimension");
        mats_b.push_back(observable_matrix(o, basis_b));
        marg_b.push_back((rho_b * mats_b.back()).trace().real());
    }

    WitnessReport report;
    report.q.resize(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) {
            double joint = (rho.matrix() *
                            kron(mats_a[static_cast<std::size_t>(x)],
                                 mats_b[static_cast<std::size_t>(y)]))
                               .trace()
                               .real();
            report.q(x, y) = joint - marg_a[static_cast<std::size_t>(x)] *
                                         marg_b[static_cast<std::size_t>(y)];
        }
    report.w = determinant(report.q);
    report.d_a = rho.d_a();
    report.d_b = rho.d_b();
    report.path = WitnessPath::Analytic;
    return report;
}

double witness_from_bloch(const RMat& s_hat,
                          const std::vector<RVec>& alice_blochs,
                          const std::vector<RVec>& bob_blochs,
                          Eigen::Index d_a, Eigen::Index d_b) {
    const auto n = static_cast<Eigen::Index>(alice_blochs.size());
    if (n == 0 || bob_blochs.size() != alice_blochs.size())
        throw SettingCountMismatch("witness_from_bloch: setting counts differ");
    for (const auto& v : alice_blochs)
        if (v.size() != s_hat.rows())
            throw DimensionMismatch("witness_from_bloch: Alice vector length");
    for (const auto& v : bob_blochs)
        if (v.size() != s_hat.cols())
            throw DimensionMismatch("witness_from_bloch: Bob vector length");

    const double c = double((d_a - 1) * (d_b - 1));
    RMat q(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y)
            q(x, y) = c * alice_blochs[static_cast<std::size_t>(x)].dot(
                              s_hat * bob_blochs[static_cast<std::size_t>(y)]);
    return determinant(q);
}

double max_witness_bound(const DensityMatrix& rho) {
    if (rho.d_a() != 2 || rho.d_b() != 2)
        throw UnsupportedDimension("max_witness_bound: two-qubit states only");
    Svd dec = svd(bloch_decompose(rho).s_hat);
    return dec.singular_values(0) * dec.singular_values(1);
}

double geometric_discord_2q(const DensityMatrix& rho) {
    if (rho.d_a() != 2 || rho.d_b() != 2)
        throw UnsupportedDimension("geometric_discord_2q: two-qubit states only");
    BlochData b = bloch_decompose(rho);
    RMat k = b.s_a * b.s_a.transpose() + b.t * b.t.transpose();
    EigenSystem es = hermitian_eigen(k.cast<complexd>());
    return 0.25 * (b.s_a.squaredNorm() + b.t.squaredNorm() - es.values(0));
}

} // namespace qdw
