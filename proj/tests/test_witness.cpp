#include <doctest.h>

#include "qdw/witness.hpp"
#include "test_helpers.hpp"

using namespace qdw;
using namespace qdw::testhelpers;

namespace {

DichotomicObservable pauli_obs(int axis) {
    DichotomicObservable o;
    o.d = 2;
    o.a = 0.0;
    o.bloch = RVec::Zero(3);
    o.bloch(axis) = 1.0;
    return o;
}

DichotomicObservable identity_obs() {
    DichotomicObservable o;
    o.d = 2;
    o.a = 1.0;
    o.bloch = RVec::Zero(3);
    return o;
}

MeasurementSet xz_set(Side side) {
    return MeasurementSet{side, {pauli_obs(0), pauli_obs(2)}};
}

DensityMatrix random_cq(Eigen::Index d_a, Eigen::Index d_b,
                        std::uint64_t seed, bool random_basis) {
    Rng rng(seed, 0xc0ffeeULL);
    std::vector<double> probs = random_probabilities(d_a, rng);
    std::vector<CMat> locals;
    for (Eigen::Index i = 0; i < d_a; ++i)
        locals.push_back(
            random_density(1, d_b, d_b, seed * 31 + static_cast<std::uint64_t>(i))
                .matrix());
    if (random_basis)
        return classical_quantum(probs, locals, random_unitary(d_a, seed + 7));
    return classical_quantum(probs, locals);
}

} // namespace

TEST_CASE("expectations on the singlet and product states") {
    DensityMatrix singlet = werner(1.0);
    PairExpectations e = expectations(singlet, pauli_obs(0), pauli_obs(0));
    CHECK(e.joint == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(e.marginal_a) < 1e-12);
    CHECK(std::abs(e.marginal_b) < 1e-12);

    DensityMatrix product = DensityMatrix(
        2, 2,
        kron(random_density(1, 2, 2, 1).matrix(),
             random_density(1, 2, 2, 2).matrix()));
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        DichotomicObservable a = random_valid_observable(2, rng);
        DichotomicObservable b = random_valid_observable(2, rng);
        PairExpectations pe = expectations(product, a, b);
        CHECK(pe.joint ==
              doctest::Approx(pe.marginal_a * pe.marginal_b).epsilon(1e-12));
        CHECK(std::abs(pe.joint) <= 1.0 + EQ_TOL);
    }

    PairExpectations trivial =
        expectations(werner(0.5), identity_obs(), pauli_obs(2));
    CHECK(trivial.marginal_a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.joint ==
          doctest::Approx(trivial.marginal_b).epsilon(1e-12));

    DichotomicObservable qutrit;
    qutrit.d = 3;
    qutrit.a = 0.0;
    qutrit.bloch = RVec::Zero(8);
    CHECK_THROWS_AS((void)expectations(singlet, qutrit, pauli_obs(0)),
                    DimensionMismatch);
}

TEST_CASE("q_value covers the singlet, products, and werner") {
    CHECK(q_value(werner(1.0), pauli_obs(0), pauli_obs(0)) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    DensityMatrix product = DensityMatrix(
        2, 2,
        kron(random_density(1, 2, 2, 11).matrix(),
             random_density(1, 2, 2, 12).matrix()));
    Rng rng(13);
    for (int k = 0; k < 10; ++k)
        CHECK(std::abs(q_value(product, random_valid_observable(2, rng),
                               random_valid_observable(2, rng))) < 1e-12);

    for (double p : {0.2, 0.7})
        CHECK(q_value(werner(p), pauli_obs(2), pauli_obs(2)) ==
              doctest::Approx(-p).epsilon(1e-12));
}

TEST_CASE("witness_value on the singlet with the x/z settings") {
    WitnessReport report =
        witness_value(werner(1.0), xz_set(Side::Alice), xz_set(Side::Bob));
    RMat expected(2, 2);
    expected << -1, 0, 0, -1;
    CHECK((report.q - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(report.w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.d_a == 2);
    CHECK(report.path == WitnessPath::Analytic);

    for (double p : {0.3, 0.6, 1.0})
        CHECK(witness_value(werner(p), xz_set(Side::Alice), xz_set(Side::Bob))
                  .w == doctest::Approx(p * p).epsilon(1e-12));

    MeasurementSet three{Side::Bob,
                         {pauli_obs(0), pauli_obs(1), pauli_obs(2)}};
    CHECK_THROWS_AS((void)witness_value(werner(1.0), xz_set(Side::Alice), three),
                    SettingCountMismatch);
}

TEST_CASE("witness_value report invariants hold on random inputs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 2000 + seed);
        Rng rng(seed, 0x9e1);
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);
        WitnessReport report = witness_value(rho, alice, bob);
        CHECK(std::abs(report.w - determinant(report.q)) < 1e-12);
        CHECK(report.q.cwiseAbs().maxCoeff() <= 4.0);
    }
}

TEST_CASE("zero-discord states always give a vanishing witness") {
    int idx = 0;
    for (Eigen::Index d_a : {2, 3, 4}) {
        for (Eigen::Index d_b : {2, 3, 4}) {
            for (int k = 0; k < 4; ++k) {
                DensityMatrix chi = random_cq(
                    d_a, d_b, 100 + static_cast<std::uint64_t>(idx), k % 2 == 1);
                for (int trial = 0; trial < 3; ++trial) {
                    Rng rng(static_cast<std::uint64_t>(idx),
                            0x2d00 + static_cast<std::uint64_t>(trial));
                    auto alice =
                        random_measurement_set(Side::Alice, d_a, d_a, rng);
                    auto bob = random_measurement_set(Side::Bob, d_b, d_a, rng);
                    CHECK(std::abs(witness_value(chi, alice, bob).w) < 1e-8);
                }
                ++idx;
            }
        }
    }
}

TEST_CASE("witness_from_bloch agrees with the full evaluation") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 3000 + seed);
        Rng rng(seed, 0xb10c4);
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);

        std::vector<RVec> ab, bb;
        for (const auto& o : alice.observables) ab.push_back(o.bloch);
        for (const auto& o : bob.observables) bb.push_back(o.bloch);

        double w_full = witness_value(rho, alice, bob).w;
        double w_bloch =
            witness_from_bloch(bloch_decompose(rho).s_hat, ab, bb, 2, 2);
        CHECK(std::abs(w_full - w_bloch) < 1e-9);
    }
}

TEST_CASE("witness_from_bloch carries the dimensional prefactor") {
    for (auto [d_a, d_b] : std::vector<std::pair<Eigen::Index, Eigen::Index>>{
             {2, 3}, {3, 2}, {3, 3}}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            DensityMatrix rho =
                random_density(d_a, d_b, d_a * d_b, 3500 + seed);
            Rng rng(seed, 0xb10c5);
            auto alice = random_measurement_set(Side::Alice, d_a, d_a, rng);
            auto bob = random_measurement_set(Side::Bob, d_b, d_a, rng);

            std::vector<RVec> ab, bb;
            for (const auto& o : alice.observables) ab.push_back(o.bloch);
            for (const auto& o : bob.observables) bb.push_back(o.bloch);

            double w_full = witness_value(rho, alice, bob).w;
            double w_bloch = witness_from_bloch(bloch_decompose(rho).s_hat,
                                                ab, bb, d_a, d_b);
            CHECK(std::abs(w_full - w_bloch) < 1e-9);
        }
    }
}

TEST_CASE("two-qubit witness equals the cross-product expression") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 4000 + seed);
        RMat s_hat = bloch_decompose(rho).s_hat;
        Rng rng(seed, 0xc405);
        std::vector<RVec> ab(2), bb(2);
        for (int s = 0; s < 2; ++s) {
            ab[static_cast<std::size_t>(s)] =
                random_valid_observable(2, rng).bloch;
            bb[static_cast<std::size_t>(s)] =
                random_valid_observable(2, rng).bloch;
        }
        double det_path = witness_from_bloch(s_hat, ab, bb, 2, 2);
        double cross_path = cross3(ab[0], ab[1])
                                .dot(cross3(RVec(s_hat * bb[0]),
                                            RVec(s_hat * bb[1])));
        CHECK(std::abs(det_path - cross_path) < 1e-10);
    }

    std::vector<RVec> ab(2, RVec::Zero(3)), bb(2, RVec::Zero(3));
    ab[0](0) = 1;
    ab[1](1) = 1;
    bb[0](0) = 1;
    bb[1](2) = 1;
    CHECK(witness_from_bloch(RMat::Zero(3, 3), ab, bb, 2, 2) == 0.0);
}

TEST_CASE("shift invariance: identity coefficients never move Q") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 5000 + seed);
        Rng rng(seed, 0x5417);
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);

        MeasurementSet alice2 = alice, bob2 = bob;
        for (auto& o : alice2.observables)
            o.a = (2.0 * rng.uniform() - 1.0) * (1.0 - o.bloch.norm());
        for (auto& o : bob2.observables)
            o.a = (2.0 * rng.uniform() - 1.0) * (1.0 - o.bloch.norm());

        WitnessReport w1 = witness_value(rho, alice, bob);
        WitnessReport w2 = witness_value(rho, alice2, bob2);
        CHECK((w1.q - w2.q).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("loss scaling is the product of the four efficiencies") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 5500 + seed);
        Rng rng(seed, 0x1055);
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);
        const double a0 = rng.uniform(), a1 = rng.uniform();
        const double b0 = rng.uniform(), b1 = rng.uniform();

        MeasurementSet alice_eff = alice, bob_eff = bob;
        alice_eff.observables[0] = apply_efficiency(alice.observables[0], a0);
        alice_eff.observables[1] = apply_efficiency(alice.observables[1], a1);
        bob_eff.observables[0] = apply_efficiency(bob.observables[0], b0);
        bob_eff.observables[1] = apply_efficiency(bob.observables[1], b1);

        double w = witness_value(rho, alice, bob).w;
        double w_eff = witness_value(rho, alice_eff, bob_eff).w;
        CHECK(std::abs(w_eff - a0 * a1 * b0 * b1 * w) < 1e-12);
    }
}

TEST_CASE("witness is covariant under local unitaries") {
    HermitianBasis basis = gell_mann_basis(2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 6000 + seed);
        Rng rng(seed, 0x10ca1);
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);

        CMat u = random_unitary(2, 7000 + seed);
        CMat v = random_unitary(2, 7500 + seed);
        CMat uv = kron(u, v);
        DensityMatrix rotated(2, 2, CMat(uv * rho.matrix() * uv.adjoint()));

        MeasurementSet alice_rot = alice, bob_rot = bob;
        for (auto& o : alice_rot.observables)
            o = observable_from_matrix(
                CMat(u * observable_matrix(o, basis) * u.adjoint()), basis);
        for (auto& o : bob_rot.observables)
            o = observable_from_matrix(
                CMat(v * observable_matrix(o, basis) * v.adjoint()), basis);

        double w = witness_value(rho, alice, bob).w;
        double w_rot = witness_value(rotated, alice_rot, bob_rot).w;
        CHECK(std::abs(w - w_rot) < 1e-10);
    }
}

TEST_CASE("max_witness_bound values and sampled tightness") {
    for (double p : {0.0, 0.4, 1.0})
        CHECK(max_witness_bound(werner(p)) ==
              doctest::Approx(p * p).epsilon(1e-12));

    DensityMatrix product = DensityMatrix(
        2, 2,
        kron(random_density(1, 2, 2, 31).matrix(),
             random_density(1, 2, 2, 32).matrix()));
    CHECK(max_witness_bound(product) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)max_witness_bound(random_density(2, 3, 6, 1)),
                    UnsupportedDimension);

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        DensityMatrix rho = random_density(2, 2, 4, 8000 + seed);
        RMat s_hat = bloch_decompose(rho).s_hat;
        double bound = max_witness_bound(rho);
        Rng rng(seed, 0x8011d);
        std::vector<RVec> ab(2), bb(2);
        for (int trial = 0; trial < 100; ++trial) {
            for (int s = 0; s < 2; ++s) {
                ab[static_cast<std::size_t>(s)] =
                    random_valid_observable(2, rng).bloch;
                bb[static_cast<std::size_t>(s)] =
                    random_valid_observable(2, rng).bloch;
            }
            CHECK(witness_from_bloch(s_hat, ab, bb, 2, 2) <= bound + 1e-9);
        }
    }
}

TEST_CASE("geometric discord oracle: products, cq states, werner") {
    DensityMatrix product = DensityMatrix(
        2, 2,
        kron(random_density(1, 2, 2, 41).matrix(),
             random_density(1, 2, 2, 42).matrix()));
    CHECK(std::abs(geometric_discord_2q(product)) < 1e-10);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        DensityMatrix chi = random_cq(2, 2, 9000 + seed, seed % 2 == 1);
        CHECK(std::abs(geometric_discord_2q(chi)) < 1e-9);
    }

    // s_a = 0, |T|^2 = 3p^2, lmax = p^2 gives (3p^2 - p^2)/4 = p^2/2.
    for (double p : {0.2, 0.5, 0.9})
        CHECK(geometric_discord_2q(werner(p)) ==
              doctest::Approx(p * p / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)geometric_discord_2q(random_density(3, 2, 6, 2)),
                    UnsupportedDimension);
}
