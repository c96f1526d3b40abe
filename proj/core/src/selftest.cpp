#include "qdw/selftest.hpp"

#include <cmath>
#include <sstream>

#include "qdw/io.hpp"
#include "qdw/sampling.hpp"
#include "qdw/witness.hpp"

namespace qdw {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

DensityMatrix random_cq_state(Eigen::Index d_a, Eigen::Index d_b,
                              std::uint64_t seed, bool random_basis) {
    Rng rng(seed, 0x6371ULL);
    std::vector<double> probs =
        random_probabilities(d_a, rng);
    std::vector<CMat> locals;
    for (Eigen::Index i = 0; i < d_a; ++i)
        locals.push_back(
            random_density(1, d_b, d_b, seed * 131 + static_cast<std::uint64_t>(i))
                .matrix());
    if (random_basis)
        return classical_quantum(probs, locals, random_unitary(d_a, seed));
    return classical_quantum(probs, locals);
}

SelftestCheck check_zero_discord(std::uint64_t seed) {
    SelftestCheck check{"zero-discord-vanishing", false, ""};
    double worst = 0.0;
    int evaluations = 0;
    std::uint64_t k = 0;
    for (Eigen::Index d_a : {2, 3, 4}) {
        for (Eigen::Index d_b : {2, 3, 4}) {
            for (int variant = 0; variant < 4; ++variant) {
                DensityMatrix chi = random_cq_state(
                    d_a, d_b, seed + 977 * ++k, variant % 2 == 1);
                for (int trial = 0; trial < 5; ++trial) {
                    Rng rng(seed, 0x5a5a0000ULL + k * 16 +
                                      static_cast<std::uint64_t>(trial));
                    auto alice = random_measurement_set(Side::Alice, d_a,
                                                        d_a, rng);
                    auto bob = random_measurement_set(Side::Bob, d_b, d_a,
                                                      rng);
                    worst = std::max(
                        worst, std::abs(witness_value(chi, alice, bob).w));
                    ++evaluations;
                }
            }
        }
    }
    check.passed = worst < 1e-8;
    check.detail = "max |w| = " + fmt(worst) + " over " +
                   std::to_string(evaluations) + " evaluations";
    return check;
}

SelftestCheck check_loss_scaling(std::uint64_t seed) {
    SelftestCheck check{"loss-scaling", false, ""};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        DensityMatrix rho =
            random_density(2, 2, 4, seed + 31 * static_cast<std::uint64_t>(i));
        Rng rng(seed, 0x10550000ULL + static_cast<std::uint64_t>(i));
        auto alice = random_measurement_set(Side::Alice, 2, 2, rng);
        auto bob = random_measurement_set(Side::Bob, 2, 2, rng);
        double alpha0 = rng.uniform(), alpha1 = rng.uniform();
        double beta0 = rng.uniform(), beta1 = rng.uniform();

        MeasurementSet alice_eff = alice, bob_eff = bob;
        alice_eff.observables[0] =
            apply_efficiency(alice.observables[0], alpha0);
        alice_eff.observables[1] =
            apply_efficiency(alice.observables[1], alpha1);
        bob_eff.observables[0] = apply_efficiency(bob.observables[0], beta0);
        bob_eff.observables[1] = apply_efficiency(bob.observables[1], beta1);

        double w = witness_value(rho, alice, bob).w;
        double w_eff = witness_value(rho, alice_eff, bob_eff).w;
        worst = std::max(worst,
                         std::abs(w_eff - alpha0 * alpha1 * beta0 * beta1 * w));
    }
    check.passed = worst < 1e-12;
    check.detail = "max |w_eff - a0 a1 b0 b1 w| = " + fmt(worst);
    return check;
}

SelftestCheck check_bound_tightness(std::uint64_t seed) {
    SelftestCheck check{"bound-tightness", false, ""};
    double worst_excess = -1.0, worst_gap = 0.0;
    for (int i = 0; i < 20; ++i) {
        DensityMatrix rho =
            random_density(2, 2, 4, seed + 77 * static_cast<std::uint64_t>(i));
        const double bound = max_witness_bound(rho);
        const RMat s_hat = bloch_decompose(rho).s_hat;

        Rng rng(seed, 0xb0000000ULL + static_cast<std::uint64_t>(i));
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<RVec> ab, bb;
            for (int s = 0; s < 2; ++s) {
                ab.push_back(random_valid_observable(2, rng).bloch);
                bb.push_back(random_valid_observable(2, rng).bloch);
            }
            worst_excess = std::max(
                worst_excess, witness_from_bloch(s_hat, ab, bb, 2, 2) - bound);
        }

        OptimalPair best = optimal_pair(s_hat);
        worst_gap = std::max(
            worst_gap,
            std::abs(witness_value(rho, best.alice, best.bob).w - bound));
    }
    check.passed = worst_excess < 1e-9 && worst_gap < 1e-9;
    check.detail = "max excess over bound = " + fmt(worst_excess) +
                   ", max optimal gap = " + fmt(worst_gap);
    return check;
}

SelftestCheck check_dual_path(std::uint64_t seed) {
    SelftestCheck check{"dual-path-agreement", false, ""};
    double worst = 0.0;
    int idx = 0;
    for (auto [d_a, d_b] : std::vector<std::pair<Eigen::Index, Eigen::Index>>{
             {2, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        for (int i = 0; i < 10; ++i) {
            DensityMatrix rho = random_density(
                d_a, d_b, d_a * d_b,
                seed + 131 * static_cast<std::uint64_t>(++idx));
            Rng rng(seed, 0xd0000000ULL + static_cast<std::uint64_t>(idx));
            auto alice = random_measurement_set(Side::Alice, d_a, d_a, rng);
            auto bob = random_measurement_set(Side::Bob, d_b, d_a, rng);

            std::vector<RVec> ab, bb;
            for (const auto& o : alice.observables) ab.push_back(o.bloch);
            for (const auto& o : bob.observables) bb.push_back(o.bloch);

            double w_full = witness_value(rho, alice, bob).w;
            double w_bloch = witness_from_bloch(bloch_decompose(rho).s_hat,
                                                ab, bb, d_a, d_b);
            worst = std::max(worst, std::abs(w_full - w_bloch));
        }
    }
    check.passed = worst < 1e-9;
    check.detail = "max |w_full - w_bloch| = " + fmt(worst);
    return check;
}

SelftestCheck check_reader_rejection(std::uint64_t) {
    SelftestCheck check{"state-reader-rejection", false, ""};
    struct Case {
        const char* text;
        const char* expect;
    };
    const Case cases[] = {
        {R"({"d_a":2,"d_b":1,"matrix":[[[0.6,0],[0,0]],[[0,0],[0.6,0]]]})",
         "unit-trace"},
        {R"({"d_a":2,"d_b":1,"matrix":[[[0.5,0],[0.5,0.2]],[[0.5,0],[0.5,0]]]})",
         "hermitian"},
        {R"({"d_a":2,"d_b":1,"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})",
         "positive-semidefinite"},
        {R"({"d_a":2,"d_b":2,"matrix":"nope"})", "state file"},
        {R"(not json at all)", "malformed"},
    };
    int rejected = 0;
    std::string missed;
    for (const auto& c : cases) {
        try {
            (void)parse_density(c.text);
            missed = missed.empty() ? c.expect : missed;
        } catch (const ParseError& e) {
            if (std::string(e.what()).find(c.expect) != std::string::npos)
                ++rejected;
            else if (missed.empty())
                missed = std::string(c.expect) + " (got: " + e.what() + ")";
        }
    }
    check.passed = rejected == static_cast<int>(std::size(cases));
    check.detail = check.passed
                       ? "all " + std::to_string(rejected) +
                             " corrupted inputs rejected by name"
                       : "missed invariant: " + missed;
    return check;
}

} // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
    return {
        check_zero_discord(seed),   check_loss_scaling(seed),
        check_bound_tightness(seed), check_dual_path(seed),
        check_reader_rejection(seed),
    };
}

} // namespace qdw
