#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdw/io.hpp"
#include "qdw/selftest.hpp"

namespace {

using namespace qdw;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double grid_point(double p_min, double step, int i) {
    // Snap accumulated grid values to 12 decimals so the CSV stays tidy.
    double p = p_min + step * i;
    return std::round(p * 1e12) / 1e12;
}

struct StateArgs {
    std::string kind;
    std::vector<double> p;
    int d_a = 2;
    int d_b = 2;
    int rank = 0;
    std::uint64_t seed = 0;
    bool random_basis = false;
    std::string out;
};

void cmd_state(const StateArgs& args) {
    if (args.kind == "werner") {
        if (args.p.size() != 1)
            throw InvalidParams("state --kind werner needs exactly one --p value");
        save_density(args.out, werner(args.p.front()));
    } else if (args.kind == "classical-quantum") {
        if (args.p.empty())
            throw InvalidParams(
                "state --kind classical-quantum needs --p p0,p1,...");
        const auto d_a = static_cast<Eigen::Index>(args.p.size());
        std::vector<CMat> locals;
        for (Eigen::Index i = 0; i < d_a; ++i)
            locals.push_back(random_density(1, args.d_b, args.d_b,
                                            args.seed * 131 +
                                                static_cast<std::uint64_t>(i))
                                 .matrix());
        DensityMatrix chi =
            args.random_basis
                ? classical_quantum(args.p, locals,
                                    random_unitary(d_a, args.seed))
                : classical_quantum(args.p, locals);
        save_density(args.out, chi);
    } else if (args.kind == "random") {
        const Eigen::Index rank =
            args.rank > 0 ? args.rank
                          : static_cast<Eigen::Index>(args.d_a) * args.d_b;
        save_density(args.out,
                     random_density(args.d_a, args.d_b, rank, args.seed));
    } else {
        throw InvalidParams("state: unknown --kind '" + args.kind + "'");
    }
}

struct WitnessArgs {
    std::string state, alice, bob;
};

void cmd_witness(const WitnessArgs& args) {
    DensityMatrix rho = load_density(args.state);
    MeasurementSet alice = load_measurements(args.alice, Side::Alice);
    MeasurementSet bob = load_measurements(args.bob, Side::Bob);
    std::cout << report_to_json(witness_value(rho, alice, bob)) << '\n';
}

struct OptimizeArgs {
    std::string state, alice_out, bob_out;
};

void cmd_optimize(const OptimizeArgs& args) {
    DensityMatrix rho = load_density(args.state);
    if (rho.d_a() != 2 || rho.d_b() != 2)
        throw UnsupportedDimension("optimize: two-qubit states only");
    OptimalPair best = optimal_pair(bloch_decompose(rho).s_hat);
    save_measurements(args.alice_out, best.alice);
    save_measurements(args.bob_out, best.bob);
    std::cout << format_double(best.w_max) << '\n';
}

struct SimulateArgs {
    std::string state, alice, bob, tally_out;
    std::vector<double> alpha, beta;
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;
    int resamples = 200;
    double level = 0.95;
};

void cmd_simulate(const SimulateArgs& args) {
    DensityMatrix rho = load_density(args.state);
    MeasurementSet alice = load_measurements(args.alice, Side::Alice);
    MeasurementSet bob = load_measurements(args.bob, Side::Bob);

    ExperimentConfig cfg{rho, alice, bob,
                         args.alpha.empty()
                             ? std::vector<double>(alice.observables.size(), 1.0)
                             : args.alpha,
                         args.beta.empty()
                             ? std::vector<double>(bob.observables.size(), 1.0)
                             : args.beta,
                         args.rounds, args.seed};
    TallyTable tally = qdw::run(cfg);
    save_tally(args.tally_out, tally);

    WitnessReport report = estimate(tally, rho.d_a(), rho.d_b());
    BootstrapInterval ci =
        bootstrap_ci(tally, args.resamples, args.level, args.seed ^ 0xb00);

    nlohmann::json out = nlohmann::json::parse(report_to_json(report));
    out["ci_low"] = ci.low;
    out["ci_high"] = ci.high;
    out["sigma"] = ci.sigma;
    out["level"] = args.level;
    std::cout << out.dump() << '\n';
}

struct SweepArgs {
    double p_min = 0.0, p_max = 1.0, p_step = 0.05;
    std::vector<double> alpha{0.75, 0.8};
    std::vector<double> beta{0.8, 0.625};
    std::int64_t rounds = 0; // 0 = analytic columns only
    std::uint64_t seed = 0;
    int resamples = 200;
    double level = 0.95;
    std::string out;
};

void cmd_sweep_werner(const SweepArgs& args) {
    if (args.p_min < 0.0 || args.p_max > 1.0 || args.p_min > args.p_max ||
        args.p_step <= 0.0)
        throw OutOfRange("sweep-werner: grid must satisfy 0 <= p-min <= p-max <= 1, p-step > 0");
    if (args.alpha.size() != 2 || args.beta.size() != 2)
        throw InvalidParams("sweep-werner: --alpha and --beta need two entries");

    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) throw ParseError("cannot write file: " + args.out);
    csv << (args.rounds > 0 ? "p,w_max,w_imp,w_est,ci_low,ci_high"
                            : "p,w_max,w_imp")
        << '\n';

    for (int i = 0;; ++i) {
        const double p = grid_point(args.p_min, args.p_step, i);
        if (p > args.p_max + args.p_step * 0.5) break;
        const double p_clamped = std::min(p, 1.0);

        DensityMatrix rho = werner(p_clamped);
        OptimalPair best = optimal_pair(bloch_decompose(rho).s_hat);
        const double w_max = witness_value(rho, best.alice, best.bob).w;

        MeasurementSet alice_eff = best.alice, bob_eff = best.bob;
        for (int s = 0; s < 2; ++s) {
            alice_eff.observables[static_cast<std::size_t>(s)] =
                apply_efficiency(best.alice.observables[static_cast<std::size_t>(s)],
                                 args.alpha[static_cast<std::size_t>(s)]);
            bob_eff.observables[static_cast<std::size_t>(s)] =
                apply_efficiency(best.bob.observables[static_cast<std::size_t>(s)],
                                 args.beta[static_cast<std::size_t>(s)]);
        }
        const double w_imp = witness_value(rho, alice_eff, bob_eff).w;

        csv << format_double(p_clamped) << ',' << format_double(w_max) << ','
            << format_double(w_imp);
        if (args.rounds > 0) {
            ExperimentConfig cfg{rho,       best.alice, best.bob,
                                 args.alpha, args.beta,  args.rounds,
                                 args.seed + static_cast<std::uint64_t>(i)};
            TallyTable tally = qdw::run(cfg);
            WitnessReport est = estimate(tally, 2, 2);
            BootstrapInterval ci = bootstrap_ci(
                tally, args.resamples, args.level,
                (args.seed + static_cast<std::uint64_t>(i)) ^ 0xb00);
            csv << ',' << format_double(est.w) << ',' << format_double(ci.low)
                << ',' << format_double(ci.high);
        }
        csv << '\n';
    }
}

int cmd_selftest(std::uint64_t seed) {
    auto checks = run_selftest(seed);
    bool all_passed = true;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << " — "
                  << c.detail << '\n';
        all_passed = all_passed && c.passed;
    }
    std::cout << (all_passed ? "selftest: all checks passed"
                             : "selftest: FAILURES present")
              << '\n';
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qdw — determinant witness of quantum discord with uncharacterized "
        "dichotomic measurements: evaluation, maximization, and Monte-Carlo "
        "estimation"};
    app.require_subcommand(1);
    int exit_code = 0;

    StateArgs state_args;
    auto* state = app.add_subcommand("state", "generate a state file");
    state->add_option("--kind", state_args.kind,
                      "werner | classical-quantum | random")
        ->required();
    state->add_option("--p", state_args.p,
                      "mixing parameter (werner) or probabilities "
                      "(classical-quantum)")
        ->delimiter(',');
    state->add_option("--da", state_args.d_a, "Alice dimension (random)");
    state->add_option("--db", state_args.d_b,
                      "Bob dimension (random, classical-quantum)");
    state->add_option("--rank", state_args.rank, "rank (random; 0 = full)");
    state->add_option("--seed", state_args.seed, "RNG seed");
    state->add_flag("--random-basis", state_args.random_basis,
                    "random unitary basis on Alice's side (classical-quantum)");
    state->add_option("--out", state_args.out, "output path")->required();
    state->callback([&] { cmd_state(state_args); });

    WitnessArgs witness_args;
    auto* witness = app.add_subcommand(
        "witness", "evaluate the witness for a state and measurement files");
    witness->add_option("--state", witness_args.state)->required();
    witness->add_option("--alice", witness_args.alice)->required();
    witness->add_option("--bob", witness_args.bob)->required();
    witness->callback([&] { cmd_witness(witness_args); });

    OptimizeArgs optimize_args;
    auto* optimize = app.add_subcommand(
        "optimize", "witness-maximizing measurements for a two-qubit state");
    optimize->add_option("--state", optimize_args.state)->required();
    optimize->add_option("--alice-out", optimize_args.alice_out)->required();
    optimize->add_option("--bob-out", optimize_args.bob_out)->required();
    optimize->callback([&] { cmd_optimize(optimize_args); });

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand(
        "simulate", "run the round-by-round experiment and estimate the witness");
    simulate->add_option("--state", simulate_args.state)->required();
    simulate->add_option("--alice", simulate_args.alice)->required();
    simulate->add_option("--bob", simulate_args.bob)->required();
    simulate->add_option("--alpha", simulate_args.alpha,
                         "detection efficiency per Alice setting")
        ->delimiter(',');
    simulate->add_option("--beta", simulate_args.beta,
                         "detection efficiency per Bob setting")
        ->delimiter(',');
    simulate->add_option("--rounds", simulate_args.rounds)->required();
    simulate->add_option("--seed", simulate_args.seed, "RNG seed");
    simulate->add_option("--tally-out", simulate_args.tally_out)->required();
    simulate->add_option("--resamples", simulate_args.resamples,
                         "bootstrap resamples");
    simulate->add_option("--level", simulate_args.level,
                         "bootstrap confidence level");
    simulate->callback([&] { cmd_simulate(simulate_args); });

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep-werner",
        "maximal and imperfect-device witness across the Werner family (CSV)");
    sweep->add_option("--p-min", sweep_args.p_min);
    sweep->add_option("--p-max", sweep_args.p_max);
    sweep->add_option("--p-step", sweep_args.p_step);
    sweep->add_option("--alpha", sweep_args.alpha,
                      "Alice efficiencies a0,a1")
        ->delimiter(',');
    sweep->add_option("--beta", sweep_args.beta, "Bob efficiencies b0,b1")
        ->delimiter(',');
    sweep->add_option("--rounds", sweep_args.rounds,
                      "rounds per grid point (0 = analytic only)");
    sweep->add_option("--seed", sweep_args.seed, "RNG seed");
    sweep->add_option("--resamples", sweep_args.resamples);
    sweep->add_option("--level", sweep_args.level);
    sweep->add_option("--out", sweep_args.out, "output CSV path")->required();
    sweep->callback([&] { cmd_sweep_werner(sweep_args); });

    std::uint64_t selftest_seed = 12345;
    auto* selftest =
        app.add_subcommand("selftest", "run the embedded invariant suite");
    selftest->add_option("--seed", selftest_seed, "RNG seed");
    selftest->callback([&] { exit_code = cmd_selftest(selftest_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qdw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
