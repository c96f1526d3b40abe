#include "qdw/states.hpp"

#include <cmath>

#include "qdw/rng.hpp"

namespace qdw {

HermitianBasis gell_mann_basis(Eigen::Index d) {
    if (d < 2) throw InvalidDimension("gell_mann_basis: d must be >= 2");

    HermitianBasis basis;
    basis.d = d;
    basis.ops.reserve(static_cast<std::size_t>(d * d));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.ops.push_back(CMat::Identity(d, d) / std::sqrt(double(d)));

    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            CMat m = CMat::Zero(d, d);
            m(j, k) = inv_sqrt2;
            m(k, j) = inv_sqrt2;
            basis.ops.push_back(m);
        }
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            CMat m = CMat::Zero(d, d);
            m(j, k) = complexd(0.0, -inv_sqrt2);
            m(k, j) = complexd(0.0, inv_sqrt2);
            basis.ops.push_back(m);
        }
    }
    for (Eigen::Index l = 1; l < d; ++l) {
        CMat m = CMat::Zero(d, d);
        double norm = 1.0 / std::sqrt(double(l) * double(l + 1));
        for (Eigen::Index i = 0; i < l; ++i) m(i, i) = norm;
        m(l, l) = -double(l) * norm;
        basis.ops.push_back(m);
    }
    return basis;
}

std::vector<std::string> density_invariant_failures(Eigen::Index d_a,
                                                    Eigen::Index d_b,
                                                    const CMat& m) {
    std::vector<std::string> failures;
    if (d_a < 1 || d_b < 1 || m.rows() != d_a * d_b || m.cols() != d_a * d_b) {
        failures.emplace_back("dimension");
        return failures;
    }
    if (!all_finite(m)) {
        failures.emplace_back("finite-entries");
        return failures;
    }
    bool hermitian = (m - m.adjoint()).cwiseAbs().maxCoeff() <= HERM_TOL;
    if (!hermitian) failures.emplace_back("hermitian");
    if (std::abs(m.trace().real() - 1.0) > HERM_TOL ||
        std::abs(m.trace().imag()) > HERM_TOL)
        failures.emplace_back("unit-trace");
    if (hermitian) {
        EigenSystem es = hermitian_eigen(m);
        if (es.values.minCoeff() < -PSD_TOL)
            failures.emplace_back("positive-semidefinite");
    }
    return failures;
}

DensityMatrix::DensityMatrix(Eigen::Index d_a, Eigen::Index d_b, CMat matrix)
    : d_a_(d_a), d_b_(d_b), matrix_(std::move(matrix)) {
    auto failures = density_invariant_failures(d_a_, d_b_, matrix_);
    if (!failures.empty()) {
        if (failures.front() == "dimension")
            throw DimensionMismatch("density matrix invariant violated: dimension");
        std::string msg = "density matrix invariant violated:";
        for (const auto& f : failures) msg += " " + f;
        throw Error(msg);
    }
}

DensityMatrix werner(double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRange("werner: p must lie in [0, 1]");
    CVec psi_minus(4);
    psi_minus << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    CMat m = p * (psi_minus * psi_minus.adjoint()) +
             (1.0 - p) / 4.0 * CMat::Identity(4, 4);
    return DensityMatrix(2, 2, std::move(m));
}

DensityMatrix classical_quantum(const std::vector<double>& probs,
                                const std::vector<CMat>& local_states,
                                const CMat& alice_basis) {
    const auto d_a = static_cast<Eigen::Index>(probs.size());
    if (d_a < 1 || local_states.size() != probs.size())
        throw DimensionMismatch(
            "classical_quantum: need one local state per probability");

    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0)
            throw InvalidProbabilities("classical_quantum: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidProbabilities("classical_quantum: probabilities sum to " +
                                   std::to_string(sum));

    const Eigen::Index d_b = local_states.front().rows();
    for (const auto& rho : local_states) {
        auto failures = density_invariant_failures(1, d_b, rho);
        if (!failures.empty()) {
            std::string what = "classical_quantum: local state fails invariant '" +
                               failures.front() + "'";
            if (failures.front() == "dimension") throw DimensionMismatch(what);
            throw Error(what);
        }
    }
    if (alice_basis.rows() != d_a || alice_basis.cols() != d_a)
        throw DimensionMismatch("classical_quantum: alice_basis dimension");
    if ((alice_basis * alice_basis.adjoint() - CMat::Identity(d_a, d_a))
            .cwiseAbs()
            .maxCoeff() > EQ_TOL)
        throw Error("classical_quantum: alice_basis is not unitary");

    CMat m = CMat::Zero(d_a * d_b, d_a * d_b);
    for (Eigen::Index i = 0; i < d_a; ++i) {
        CVec col = alice_basis.col(i);
        CMat projector = col * col.adjoint();
        m += probs[static_cast<std::size_t>(i)] *
             kron(projector, local_states[static_cast<std::size_t>(i)]);
    }
    return DensityMatrix(d_a, d_b, std::move(m));
}

DensityMatrix classical_quantum(const std::vector<double>& probs,
                                const std::vector<CMat>& local_states) {
    const auto d_a = static_cast<Eigen::Index>(probs.size());
    return classical_quantum(probs, local_states, CMat::Identity(d_a, d_a));
}

DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, std::uint64_t seed) {
    const Eigen::Index dim = d_a * d_b;
    if (rank < 1 || rank > dim)
        throw InvalidRank("random_density: rank must lie in [1, d_a*d_b]");

    Rng rng(seed);
    CMat g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < rank; ++j)
            g(i, j) = complexd(rng.normal(), rng.normal());

    CMat m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(d_a, d_b, std::move(m));
}

CMat random_unitary(Eigen::Index d, std::uint64_t seed) {
    if (d < 1) throw InvalidDimension("random_unitary: d must be >= 1");
    Rng rng(seed, 0x51c2a37ce61ULL);
    CMat g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = complexd(rng.normal(), rng.normal());

    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (Eigen::Index i = 0; i < d; ++i) {
        double mag = std::abs(r(i, i));
        q.col(i) *= mag > 0.0 ? r(i, i) / mag : complexd(1.0, 0.0);
    }
    return q;
}

namespace {

void check_basis_match(const DensityMatrix& rho, const HermitianBasis& basis_a,
                       const HermitianBasis& basis_b) {
    if (basis_a.d != rho.d_a() || basis_b.d != rho.d_b())
        throw DimensionMismatch("bloch: operator basis does not match state");
}

double hs_inner(const CMat& op, const CMat& m) {
    // Tr[op m] for Hermitian op against Hermitian m; imaginary part is noise.
    return (op * m).trace().real();
}

} // namespace

BlochData bloch_decompose(const DensityMatrix& rho,
                          const HermitianBasis& basis_a,
                          const HermitianBasis& basis_b) {
    check_basis_match(rho, basis_a, basis_b);
    const Eigen::Index d_a = rho.d_a(), d_b = rho.d_b();
    const Eigen::Index n_a = d_a * d_a - 1, n_b = d_b * d_b - 1;

    const CMat rho_a = partial_trace(rho.matrix(), d_a, d_b, Subsystem::A);
    const CMat rho_b = partial_trace(rho.matrix(), d_a, d_b, Subsystem::B);

    const double ca = std::sqrt(double(d_a) / double(d_a - 1));
    const double cb = std::sqrt(double(d_b) / double(d_b - 1));
    const double ct = std::sqrt(double(d_a * d_b) /
                                double((d_a - 1) * (d_b - 1)));

    BlochData out;
    out.s_a.resize(n_a);
    out.s_b.resize(n_b);
    out.t.resize(n_a, n_b);
    for (Eigen::Index i = 0; i < n_a; ++i)
        out.s_a(i) = ca * hs_inner(basis_a.ops[static_cast<std::size_t>(i + 1)],
                                   rho_a);
    for (Eigen::Index j = 0; j < n_b; ++j)
        out.s_b(j) = cb * hs_inner(basis_b.ops[static_cast<std::size_t>(j + 1)],
                                   rho_b);
    for (Eigen::Index i = 0; i < n_a; ++i) {
        const CMat& tau = basis_a.ops[static_cast<std::size_t>(i + 1)];
        for (Eigen::Index j = 0; j < n_b; ++j) {
            const CMat& ups = basis_b.ops[static_cast<std::size_t>(j + 1)];
            out.t(i, j) = ct * hs_inner(kron(tau, ups), rho.matrix());
        }
    }
    out.s_hat = out.t - out.s_a * out.s_b.transpose();
    return out;
}

BlochData bloch_decompose(const DensityMatrix& rho) {
    return bloch_decompose(rho, gell_mann_basis(rho.d_a()),
                           gell_mann_basis(rho.d_b()));
}

DensityMatrix bloch_reconstruct(const BlochData& b,
                                const HermitianBasis& basis_a,
                                const HermitianBasis& basis_b) {
    const Eigen::Index d_a = basis_a.d, d_b = basis_b.d;
    const Eigen::Index n_a = d_a * d_a - 1, n_b = d_b * d_b - 1;
    if (b.s_a.size() != n_a || b.s_b.size() != n_b || b.t.rows() != n_a ||
        b.t.cols() != n_b)
        throw DimensionMismatch("bloch_reconstruct: field sizes do not match bases");

    const double fa = std::sqrt(double(d_a - 1));
    const double fb = std::sqrt(double(d_b - 1));

    CMat m = kron(basis_a.ops[0], basis_b.ops[0]);
    for (Eigen::Index i = 0; i < n_a; ++i)
        m += fa * b.s_a(i) *
             kron(basis_a.ops[static_cast<std::size_t>(i + 1)], basis_b.ops[0]);
    for (Eigen::Index j = 0; j < n_b; ++j)
        m += fb * b.s_b(j) *
             kron(basis_a.ops[0], basis_b.ops[static_cast<std::size_t>(j + 1)]);
    for (Eigen::Index i = 0; i < n_a; ++i)
        for (Eigen::Index j = 0; j < n_b; ++j)
            m += fa * fb * b.t(i, j) *
                 kron(basis_a.ops[static_cast<std::size_t>(i + 1)],
                      basis_b.ops[static_cast<std::size_t>(j + 1)]);
    m /= std::sqrt(double(d_a * d_b));
    return DensityMatrix(d_a, d_b, std::move(m));
}

RMat s_matrix(const BlochData& b) {
    return b.t - b.s_a * b.s_b.transpose();
}

} // namespace qdw
