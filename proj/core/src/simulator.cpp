#include "qdw/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qdw/rng.hpp"

namespace qdw {

TallyTable TallyTable::zeros(Eigen::Index n_a, Eigen::Index n_b) {
    if (n_a < 1 || n_b < 1)
        throw InvalidConfig("tally: need at least one setting per side");
    TallyTable t;
    t.n_a = n_a;
    t.n_b = n_b;
    t.counts.assign(static_cast<std::size_t>(n_a * n_b),
                    {{{0, 0}, {0, 0}}});
    return t;
}

std::int64_t& TallyTable::at(Eigen::Index x, Eigen::Index y, int a, int b) {
    return counts[static_cast<std::size_t>(x * n_b + y)]
                 [static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::int64_t TallyTable::at(Eigen::Index x, Eigen::Index y, int a,
                            int b) const {
    return counts[static_cast<std::size_t>(x * n_b + y)]
                 [static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::int64_t TallyTable::rounds_at(Eigen::Index x, Eigen::Index y) const {
    const auto& c = counts[static_cast<std::size_t>(x * n_b + y)];
    return c[0][0] + c[0][1] + c[1][0] + c[1][1];
}

std::int64_t TallyTable::total_rounds() const {
    std::int64_t total = 0;
    for (const auto& c : counts)
        total += c[0][0] + c[0][1] + c[1][0] + c[1][1];
    return total;
}

void TallyTable::merge(const TallyTable& other) {
    if (other.n_a != n_a || other.n_b != n_b)
        throw DimensionMismatch("tally merge: setting counts differ");
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                counts[i][static_cast<std::size_t>(a)]
                      [static_cast<std::size_t>(b)] +=
                    other.counts[i][static_cast<std::size_t>(a)]
                                [static_cast<std::size_t>(b)];
}

namespace {

struct RoundDistributions {
    Eigen::Index n_a = 0, n_b = 0;
    // cumulative joint over (a,b) in order 00, 01, 10, 11, per (x, y)
    std::vector<std::array<double, 4>> joint_cdf;
    std::vector<double> p_a0; // P(a = 0 | x), genuine click
    std::vector<double> p_b0; // P(b = 0 | y)
};

RoundDistributions precompute(const ExperimentConfig& cfg) {
    const auto n_a = static_cast<Eigen::Index>(cfg.alice.observables.size());
    const auto n_b = static_cast<Eigen::Index>(cfg.bob.observables.size());
    if (n_a < 1 || n_a != n_b)
        throw InvalidConfig("run: setting counts must be equal and positive");
    if (cfg.alpha.size() != static_cast<std::size_t>(n_a) ||
        cfg.beta.size() != static_cast<std::size_t>(n_b))
        throw InvalidConfig("run: efficiency list lengths must match settings");
    for (double e : cfg.alpha)
        if (e < 0.0 || e > 1.0)
            throw InvalidConfig("run: alpha outside [0, 1]");
    for (double e : cfg.beta)
        if (e < 0.0 || e > 1.0)
            throw InvalidConfig("run: beta outside [0, 1]");
    if (cfg.rounds < 1) throw InvalidConfig("run: rounds must be >= 1");

    const Eigen::Index d_a = cfg.state.d_a(), d_b = cfg.state.d_b();
    const HermitianBasis basis_a = gell_mann_basis(d_a);
    const HermitianBasis basis_b = gell_mann_basis(d_b);

    std::vector<CMat> effect_a0, effect_b0;
    for (const auto& o : cfg.alice.observables) {
        if (o.d != d_a)
            throw InvalidConfig("run: Alice observable dimension mismatch");
        if (!validate(o).spectral_ok)
            throw InvalidConfig("run: Alice observable is not positive");
        effect_a0.push_back(
            0.5 * (CMat::Identity(d_a, d_a) + observable_matrix(o, basis_a)));
    }
    for (const auto& o : cfg.bob.observables) {
        if (o.d != d_b)
            throw InvalidConfig("run: Bob observable dimension mismatch");
        if (!validate(o).spectral_ok)
            throw InvalidConfig("run: Bob observable is not positive");
        effect_b0.push_back(
            0.5 * (CMat::Identity(d_b, d_b) + observable_matrix(o, basis_b)));
    }

    const CMat& rho = cfg.state.matrix();
    const CMat rho_a = partial_trace(rho, d_a, d_b, Subsystem::A);
    const CMat rho_b = partial_trace(rho, d_a, d_b, Subsystem::B);
    const CMat id_a = CMat::Identity(d_a, d_a);
    const CMat id_b = CMat::Identity(d_b, d_b);

    RoundDistributions dist;
    dist.n_a = n_a;
    dist.n_b = n_b;
    dist.joint_cdf.resize(static_cast<std::size_t>(n_a * n_b));
    for (Eigen::Index x = 0; x < n_a; ++x) {
        for (Eigen::Index y = 0; y < n_b; ++y) {
            std::array<double, 4> p{};
            for (int a = 0; a < 2; ++a) {
                const CMat ea = a == 0
                                    ? effect_a0[static_cast<std::size_t>(x)]
                                    : CMat(id_a -
                                           effect_a0[static_cast<std::size_t>(x)]);
                for (int b = 0; b < 2; ++b) {
                    const CMat eb =
                        b == 0 ? effect_b0[static_cast<std::size_t>(y)]
                               : CMat(id_b -
                                      effect_b0[static_cast<std::size_t>(y)]);
                    p[static_cast<std::size_t>(2 * a + b)] = std::max(
                        0.0, (rho * kron(ea, eb)).trace().real());
                }
            }
            double total = p[0] + p[1] + p[2] + p[3];
            std::array<double, 4> cdf{};
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                acc += p[static_cast<std::size_t>(k)] / total;
                cdf[static_cast<std::size_t>(k)] = acc;
            }
            cdf[3] = 1.0;
            dist.joint_cdf[static_cast<std::size_t>(x * n_b + y)] = cdf;
        }
    }
    for (Eigen::Index x = 0; x < n_a; ++x)
        dist.p_a0.push_back(std::clamp(
            (rho_a * effect_a0[static_cast<std::size_t>(x)]).trace().real(),
            0.0, 1.0));
    for (Eigen::Index y = 0; y < n_b; ++y)
        dist.p_b0.push_back(std::clamp(
            (rho_b * effect_b0[static_cast<std::size_t>(y)]).trace().real(),
            0.0, 1.0));
    return dist;
}

TallyTable run_range(const ExperimentConfig& cfg, const RoundDistributions& dist,
                     std::int64_t first, std::int64_t last) {
    TallyTable tally = TallyTable::zeros(dist.n_a, dist.n_b);
    const std::int64_t pairs = dist.n_a * dist.n_b;

    for (std::int64_t r = first; r < last; ++r) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(r));
        const std::int64_t k = rng.uniform_index(pairs);
        const Eigen::Index x = k / dist.n_b;
        const Eigen::Index y = k % dist.n_b;

        const bool genuine_a =
            rng.uniform() < cfg.alpha[static_cast<std::size_t>(x)];
        const bool genuine_b =
            rng.uniform() < cfg.beta[static_cast<std::size_t>(y)];

        int a, b;
        if (genuine_a && genuine_b) {
            const auto& cdf = dist.joint_cdf[static_cast<std::size_t>(k)];
            const double u = rng.uniform();
            int cell = 3;
            for (int c = 0; c < 4; ++c)
                if (u < cdf[static_cast<std::size_t>(c)]) {
                    cell = c;
                    break;
                }
            a = cell >> 1;
            b = cell & 1;
        } else if (genuine_a) {
            a = rng.uniform() < dist.p_a0[static_cast<std::size_t>(x)] ? 0 : 1;
            b = rng.uniform() < 0.5 ? 0 : 1;
        } else if (genuine_b) {
            a = rng.uniform() < 0.5 ? 0 : 1;
            b = rng.uniform() < dist.p_b0[static_cast<std::size_t>(y)] ? 0 : 1;
        } else {
            a = rng.uniform() < 0.5 ? 0 : 1;
            b = rng.uniform() < 0.5 ? 0 : 1;
        }
        ++tally.at(x, y, a, b);
    }
    return tally;
}

} // namespace

TallyTable run(const ExperimentConfig& cfg, std::int64_t first_round,
               std::int64_t last_round) {
    const RoundDistributions dist = precompute(cfg);
    if (first_round < 0 || last_round < first_round ||
        last_round > cfg.rounds)
        throw InvalidConfig("run: round span outside [0, rounds]");
    return run_range(cfg, dist, first_round, last_round);
}

TallyTable run(const ExperimentConfig& cfg) {
    const RoundDistributions dist = precompute(cfg);

    const std::int64_t min_chunk = 1 << 16;
    unsigned hw = std::thread::hardware_concurrency();
    auto n_threads =
        static_cast<std::int64_t>(std::min(hw == 0 ? 1u : hw, 8u));
    if (cfg.rounds < 2 * min_chunk || n_threads < 2)
        return run_range(cfg, dist, 0, cfg.rounds);

    const std::int64_t chunk = (cfg.rounds + n_threads - 1) / n_threads;
    std::vector<TallyTable> partial(
        static_cast<std::size_t>(n_threads),
        TallyTable::zeros(dist.n_a, dist.n_b));
    std::vector<std::thread> workers;
    for (std::int64_t i = 0; i < n_threads; ++i) {
        const std::int64_t first = i * chunk;
        const std::int64_t last = std::min(cfg.rounds, first + chunk);
        workers.emplace_back([&, i, first, last] {
            partial[static_cast<std::size_t>(i)] =
                run_range(cfg, dist, first, last);
        });
    }
    for (auto& w : workers) w.join();

    TallyTable tally = TallyTable::zeros(dist.n_a, dist.n_b);
    for (const auto& p : partial) tally.merge(p);
    return tally;
}

WitnessReport estimate(const TallyTable& t, Eigen::Index d_a,
                       Eigen::Index d_b) {
    if (t.n_a != t.n_b)
        throw SettingCountMismatch("estimate: tally is not square");
    const Eigen::Index n = t.n_a;

    RMat joint(n, n);
    RVec marg_a(n), marg_b(n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) {
            const std::int64_t m = t.rounds_at(x, y);
            if (m == 0) throw EmptySetting("estimate: empty setting pair");
            joint(x, y) =
                static_cast<double>(t.at(x, y, 0, 0) + t.at(x, y, 1, 1) -
                                    t.at(x, y, 0, 1) - t.at(x, y, 1, 0)) /
                static_cast<double>(m);
        }
    // Marginals pool the partner's settings: a device-independent marginal
    // cannot depend on the other side's input.
    for (Eigen::Index x = 0; x < n; ++x) {
        std::int64_t plus = 0, total = 0;
        for (Eigen::Index y = 0; y < n; ++y) {
            plus += t.at(x, y, 0, 0) + t.at(x, y, 0, 1);
            total += t.rounds_at(x, y);
        }
        marg_a(x) = (2.0 * static_cast<double>(plus) -
                     static_cast<double>(total)) /
                    static_cast<double>(total);
    }
    for (Eigen::Index y = 0; y < n; ++y) {
        std::int64_t plus = 0, total = 0;
        for (Eigen::Index x = 0; x < n; ++x) {
            plus += t.at(x, y, 0, 0) + t.at(x, y, 1, 0);
            total += t.rounds_at(x, y);
        }
        marg_b(y) = (2.0 * static_cast<double>(plus) -
                     static_cast<double>(total)) /
                    static_cast<double>(total);
    }

    WitnessReport report;
    report.q = joint - marg_a * marg_b.transpose();
    report.w = determinant(report.q);
    report.d_a = d_a;
    report.d_b = d_b;
    report.path = WitnessPath::Estimated;
    return report;
}

WitnessReport estimate(const TallyTable& t) {
    return estimate(t, t.n_a, t.n_b);
}

BootstrapInterval bootstrap_ci(const TallyTable& t, int resamples,
                               double level, std::uint64_t seed) {
    if (resamples < 100)
        throw InvalidParams("bootstrap_ci: resamples must be >= 100");
    if (level <= 0.0 || level >= 1.0)
        throw InvalidParams("bootstrap_ci: level must lie in (0, 1)");

    std::vector<double> ws;
    ws.reserve(static_cast<std::size_t>(resamples));
    TallyTable resampled = t;

    for (int r = 0; r < resamples; ++r) {
        Rng rng(seed, 0x626f6f74ULL + static_cast<std::uint64_t>(r));
        for (Eigen::Index x = 0; x < t.n_a; ++x)
            for (Eigen::Index y = 0; y < t.n_b; ++y) {
                const std::int64_t m = t.rounds_at(x, y);
                double remaining_p = 1.0;
                std::int64_t remaining_n = m;
                for (int cell = 0; cell < 4; ++cell) {
                    const int a = cell >> 1, b = cell & 1;
                    std::int64_t k;
                    if (cell == 3) {
                        k = remaining_n;
                    } else {
                        const double p_cell =
                            static_cast<double>(t.at(x, y, a, b)) /
                            static_cast<double>(m);
                        const double cond =
                            remaining_p > 0.0 ? p_cell / remaining_p : 0.0;
                        k = binomial_draw(rng, remaining_n,
                                          std::clamp(cond, 0.0, 1.0));
                        remaining_n -= k;
                        remaining_p -= p_cell;
                    }
                    resampled.at(x, y, a, b) = k;
                }
            }
        ws.push_back(estimate(resampled).w);
    }

    std::sort(ws.begin(), ws.end());
    auto quantile = [&](double q) {
        const double h = q * static_cast<double>(ws.size() - 1);
        const auto lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, ws.size() - 1);
        const double frac = h - static_cast<double>(lo);
        return ws[lo] * (1.0 - frac) + ws[hi] * frac;
    };

    double mean = 0.0;
    for (double w : ws) mean += w;
    mean /= static_cast<double>(ws.size());
    double var = 0.0;
    for (double w : ws) var += (w - mean) * (w - mean);
    var /= static_cast<double>(ws.size() - 1);

    BootstrapInterval ci;
    ci.low = quantile((1.0 - level) / 2.0);
    ci.high = quantile((1.0 + level) / 2.0);
    ci.sigma = std::sqrt(var);
    return ci;
}

} // namespace qdw
