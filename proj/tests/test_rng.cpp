#include <doctest.h>

#include <cmath>

#include "qdw/rng.hpp"

using namespace qdw;

TEST_CASE("identical seeds give identical sequences, streams decorrelate") {
    Rng a(42), b(42), c(42, 1);
    bool streams_differ = false;
    for (int i = 0; i < 1000; ++i) {
        auto va = a.next_u64();
        CHECK(va == b.next_u64());
        if (va != c.next_u64()) streams_differ = true;
    }
    CHECK(streams_differ);
}

TEST_CASE("uniform stays in [0,1) with sane mean") {
    Rng rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("uniform_index covers the range uniformly") {
    Rng rng(11);
    int counts[4] = {0, 0, 0, 0};
    const int n = 40000;
    for (int i = 0; i < n; ++i) ++counts[rng.uniform_index(4)];
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(counts[k] - n / 4) < 500); // ~5 sigma
}

TEST_CASE("normal has unit variance") {
    Rng rng(13);
    double sum = 0.0, sum2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("binomial_draw edge cases and moments") {
    Rng rng(17);
    CHECK(binomial_draw(rng, 0, 0.5) == 0);
    CHECK(binomial_draw(rng, 100, 0.0) == 0);
    CHECK(binomial_draw(rng, 100, 1.0) == 100);

    const std::int64_t n = 250000;
    const double p = 0.23;
    double sum = 0.0, sum2 = 0.0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) {
        auto k = static_cast<double>(binomial_draw(rng, n, p));
        REQUIRE(k >= 0);
        REQUIRE(k <= static_cast<double>(n));
        sum += k;
        sum2 += k * k;
    }
    const double mean = sum / draws;
    const double var = sum2 / draws - mean * mean;
    const double expect_mean = static_cast<double>(n) * p;
    const double expect_var = static_cast<double>(n) * p * (1.0 - p);
    // 5-sigma bands on the Monte-Carlo estimates of mean and variance.
    CHECK(std::abs(mean - expect_mean) <
          5.0 * std::sqrt(expect_var / draws));
    CHECK(std::abs(var - expect_var) < 0.2 * expect_var);
}

TEST_CASE("binomial_draw matches the exact pmf for small n") {
    Rng rng(19);
    const std::int64_t n = 8;
    const double p = 0.37;
    int counts[9] = {};
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) ++counts[binomial_draw(rng, n, p)];

    for (int k = 0; k <= 8; ++k) {
        double pmf = 1.0;
        for (int j = 0; j < k; ++j)
            pmf *= p * static_cast<double>(n - j) / static_cast<double>(j + 1);
        for (int j = 0; j < n - k; ++j) pmf *= 1.0 - p;
        const double freq = static_cast<double>(counts[k]) / draws;
        const double sigma = std::sqrt(pmf * (1.0 - pmf) / draws);
        CHECK(std::abs(freq - pmf) < 5.0 * sigma + 1e-6);
    }
}
