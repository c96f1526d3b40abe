#include <doctest.h>

#include "qdw/witness.hpp"
#include "test_helpers.hpp"

using namespace qdw;
using namespace qdw::testhelpers;

namespace {

DichotomicObservable make_obs(double a, double bx, double by, double bz) {
    DichotomicObservable o;
    o.d = 2;
    o.a = a;
    o.bloch.resize(3);
    o.bloch << bx, by, bz;
    return o;
}

} // namespace

TEST_CASE("observable_matrix reproduces Pauli observables") {
    HermitianBasis basis = gell_mann_basis(2);
    CHECK((observable_matrix(make_obs(0, 0, 0, 1), basis) - pauli_z())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((observable_matrix(make_obs(1, 0, 0, 0), basis) -
           CMat::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("observable_matrix qutrit along a spectral-norm-one direction") {
    HermitianBasis basis = gell_mann_basis(3);
    DichotomicObservable o;
    o.d = 3;
    o.a = 0.0;
    o.bloch = RVec::Zero(8);
    o.bloch(0) = 1.0 / std::sqrt(3.0); // first Gell-Mann direction, |A| = 1

    EigenSystem es = hermitian_eigen(observable_matrix(o, basis));
    CHECK(es.values(0) <= 1.0 + 1e-12);
    CHECK(es.values(es.values.size() - 1) >= -1.0 - 1e-12);
    CHECK(es.values(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("observable_matrix round trips through observable_from_matrix") {
    for (Eigen::Index d : {2, 3, 4}) {
        HermitianBasis basis = gell_mann_basis(d);
        Rng rng(55 + static_cast<std::uint64_t>(d));
        for (int k = 0; k < 10; ++k) {
            DichotomicObservable o = random_valid_observable(d, rng);
            DichotomicObservable back =
                observable_from_matrix(observable_matrix(o, basis), basis);
            CHECK(std::abs(back.a - o.a) < 1e-12);
            CHECK((back.bloch - o.bloch).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("validate on the qubit boundary and beyond") {
    ObservableValidation ok = validate(make_obs(0.5, 0.5, 0, 0));
    CHECK(ok.norm_constraint_ok);
    CHECK(ok.spectral_ok);
    CHECK(ok.accepted());

    // 2x2 eigenvalues are a +- |bloch|.
    ObservableValidation bad = validate(make_obs(0.6, 0.6, 0, 0));
    CHECK_FALSE(bad.norm_constraint_ok);
    CHECK_FALSE(bad.spectral_ok);
    CHECK(bad.max_eigenvalue == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("validate flags the sufficient-only qutrit constraint") {
    // Diagonal direction, |bloch| = 0.55: spectrum sqrt(3)*0.55 ~ 0.953
    // stays valid while |a| + (d-1)|bloch| = 1.1 violates the norm bound.
    DichotomicObservable o;
    o.d = 3;
    o.a = 0.0;
    o.bloch = RVec::Zero(8);
    o.bloch(6) = 0.55; // first diagonal operator after 3 sym + 3 antisym

    ObservableValidation report = validate(o);
    CHECK_FALSE(report.norm_constraint_ok);
    CHECK(report.spectral_ok);
    CHECK(report.accepted());
    CHECK(report.max_eigenvalue ==
          doctest::Approx(std::sqrt(3.0) * 0.55).epsilon(1e-12));
}

TEST_CASE("apply_efficiency endpoints and the reference point") {
    DichotomicObservable sx = make_obs(0, 1, 0, 0);
    DichotomicObservable same = apply_efficiency(sx, 1.0);
    CHECK(same.a == sx.a);
    CHECK((same.bloch - sx.bloch).cwiseAbs().maxCoeff() == 0.0);

    DichotomicObservable dead = apply_efficiency(make_obs(0.3, 0, 0.8, 0), 0.0);
    CHECK(dead.a == 0.3);
    CHECK(dead.bloch.cwiseAbs().maxCoeff() == 0.0);

    DichotomicObservable dimmed = apply_efficiency(sx, 0.75);
    CHECK(dimmed.bloch(0) == 0.75);
    CHECK(dimmed.bloch(1) == 0.0);
    CHECK(dimmed.bloch(2) == 0.0);

    CHECK_THROWS_AS((void)apply_efficiency(sx, 1.5), OutOfRange);
    CHECK_THROWS_AS((void)apply_efficiency(sx, -0.1), OutOfRange);
}

TEST_CASE("apply_efficiency composes multiplicatively") {
    Rng rng(66);
    // Power-of-two efficiencies scale without rounding, so the composition
    // is an exact entrywise identity.
    const double alphas[] = {1.0, 0.5, 0.25, 0.125};
    for (int k = 0; k < 10; ++k) {
        DichotomicObservable o = random_valid_observable(2, rng);
        for (double a1 : alphas)
            for (double a2 : alphas) {
                DichotomicObservable twice =
                    apply_efficiency(apply_efficiency(o, a1), a2);
                DichotomicObservable once = apply_efficiency(o, a1 * a2);
                CHECK((twice.bloch - once.bloch).cwiseAbs().maxCoeff() == 0.0);
                CHECK(twice.a == once.a);
            }
    }
}

TEST_CASE("projective_from_direction builds sharp qubit measurements") {
    RVec ex(3), ez(3);
    ex << 1, 0, 0;
    ez << 0, 0, 1;
    HermitianBasis basis = gell_mann_basis(2);

    DichotomicObservable mx = projective_from_direction(ex);
    DichotomicObservable mz = projective_from_direction(ez);
    CHECK((observable_matrix(mx, basis) - pauli_x()).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK((observable_matrix(mz, basis) - pauli_z()).cwiseAbs().maxCoeff() <
          1e-15);

    // Orthogonal directions anticommute for qubits.
    CMat ax = observable_matrix(mx, basis);
    CMat az = observable_matrix(mz, basis);
    CHECK((ax * az + az * ax).cwiseAbs().maxCoeff() < 1e-14);

    RVec not_unit(3);
    not_unit << 0.5, 0, 0;
    CHECK_THROWS_AS((void)projective_from_direction(not_unit), NotUnit);
}

TEST_CASE("optimal_pair on the Werner family reaches p^2") {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
        RMat s_hat = -p * RMat::Identity(3, 3);
        OptimalPair best = optimal_pair(s_hat);
        CHECK(best.w_max == doctest::Approx(p * p).epsilon(1e-12));
        DensityMatrix rho = werner(p);
        CHECK(witness_value(rho, best.alice, best.bob).w ==
              doctest::Approx(p * p).epsilon(1e-9));
    }
}

TEST_CASE("optimal_pair on rank-1 s_hat yields zero with valid measurements") {
    RVec u(3), v(3);
    u << 1, 2, -1;
    v << 0.5, 0, 1;
    OptimalPair best = optimal_pair(RMat(u * v.transpose()));
    CHECK(best.w_max == doctest::Approx(0.0).epsilon(1e-12));
    for (const auto& set : {best.alice, best.bob})
        for (const auto& o : set.observables) {
            CHECK(std::abs(o.bloch.norm() - 1.0) < 1e-12);
            CHECK(validate(o).accepted());
        }
}

TEST_CASE("optimal_pair emits orthonormal MUB directions with diagonal Q") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 500 + seed);
        RMat s_hat = bloch_decompose(rho).s_hat;
        OptimalPair best = optimal_pair(s_hat);

        CHECK(std::abs(best.alice.observables[0].bloch.dot(
                  best.alice.observables[1].bloch)) < 1e-10);
        CHECK(std::abs(best.bob.observables[0].bloch.dot(
                  best.bob.observables[1].bloch)) < 1e-10);
        for (const auto& set : {best.alice, best.bob})
            for (const auto& o : set.observables)
                CHECK(std::abs(o.bloch.norm() - 1.0) < 1e-10);

        Svd dec = svd(s_hat);
        WitnessReport report = witness_value(rho, best.alice, best.bob);
        CHECK(std::abs(report.q(0, 0) - dec.singular_values(0)) < 1e-9);
        CHECK(std::abs(report.q(1, 1) - dec.singular_values(1)) < 1e-9);
        CHECK(std::abs(report.q(0, 1)) < 1e-9);
        CHECK(std::abs(report.q(1, 0)) < 1e-9);
        CHECK(report.w == doctest::Approx(best.w_max).epsilon(1e-9));
    }
}

TEST_CASE("optimal_pair beats a random search over valid quadruples") {
    // Random-search oracle: no sampled quadruple may exceed w_max.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 1700 + seed);
        RMat s_hat = bloch_decompose(rho).s_hat;
        OptimalPair best = optimal_pair(s_hat);

        Rng rng(seed, 0xacce55ULL);
        double best_random = -1.0;
        std::vector<RVec> ab(2), bb(2);
        for (int trial = 0; trial < 10000; ++trial) {
            for (int s = 0; s < 2; ++s) {
                ab[static_cast<std::size_t>(s)] =
                    random_valid_observable(2, rng).bloch;
                bb[static_cast<std::size_t>(s)] =
                    random_valid_observable(2, rng).bloch;
            }
            best_random =
                std::max(best_random, witness_from_bloch(s_hat, ab, bb, 2, 2));
        }
        CHECK(best.w_max >= best_random - 1e-9);
    }
}

TEST_CASE("valid observables keep expectations inside [-1, 1]") {
    Rng rng(77);
    for (int k = 0; k < 50; ++k) {
        Eigen::Index d = 2 + (k % 3);
        DichotomicObservable o = random_valid_observable(d, rng);
        REQUIRE(validate(o).accepted());
        DensityMatrix rho =
            random_density(1, d, d, 6000 + static_cast<std::uint64_t>(k));
        double expect =
            (rho.matrix() * observable_matrix(o, gell_mann_basis(d)))
                .trace()
                .real();
        CHECK(expect <= 1.0 + EQ_TOL);
        CHECK(expect >= -1.0 - EQ_TOL);
    }
}
