#include "qdw/rng.hpp"

#include <cmath>

#include "qdw/errors.hpp"

namespace qdw {

namespace {

constexpr std::uint64_t GOLDEN = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix_next(std::uint64_t& s) {
    std::uint64_t z = (s += GOLDEN);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t scramble(std::uint64_t x) {
    std::uint64_t s = x;
    return splitmix_next(s);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(scramble(seed) ^ scramble(stream ^ 0x6a09e667f3bcc909ULL)) {}

std::uint64_t Rng::next_u64() {
    return splitmix_next(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_index(std::int64_t n) {
    if (n <= 0) throw InvalidParams("uniform_index: n must be positive");
    auto k = static_cast<std::int64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    // (0,1] for the log argument.
    double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::int64_t binomial_draw(Rng& rng, std::int64_t n, double p) {
    if (n < 0) throw InvalidParams("binomial_draw: n must be non-negative");
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;

    const double q = 1.0 - p;
    const auto nd = static_cast<double>(n);
    auto mode = static_cast<std::int64_t>((nd + 1.0) * p);
    if (mode > n) mode = n;

    // log pmf at the mode, then ratio recurrences outward.
    double log_pm = std::lgamma(nd + 1.0) -
                    std::lgamma(static_cast<double>(mode) + 1.0) -
                    std::lgamma(static_cast<double>(n - mode) + 1.0) +
                    static_cast<double>(mode) * std::log(p) +
                    static_cast<double>(n - mode) * std::log1p(-p);
    double pm = std::exp(log_pm);

    const double u = rng.uniform();
    double acc = pm;
    if (u <= acc) return mode;

    double p_up = pm, p_down = pm;
    std::int64_t hi = mode, lo = mode;
    while (hi < n || lo > 0) {
        if (hi < n) {
            p_up *= (static_cast<double>(n - hi) /
                     static_cast<double>(hi + 1)) *
                    (p / q);
            ++hi;
            acc += p_up;
            if (u <= acc) return hi;
        }
        if (lo > 0) {
            p_down *= (static_cast<double>(lo) /
                       static_cast<double>(n - lo + 1)) *
                      (q / p);
            --lo;
            acc += p_down;
            if (u <= acc) return lo;
        }
    }
    // Floating-point leftover mass; return the mode.
    return mode;
}

} // namespace qdw
