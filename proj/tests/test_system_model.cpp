#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tworelay/system_model.hpp"

using namespace tworelay;

TEST_CASE("delta_of_rate examples") {
    CHECK(delta_of_rate(1.0 / 3.0) == 1.0);
    CHECK(delta_of_rate(1.0, 3) == 7.0);
    CHECK(delta_of_rate(1e-12) > 0.0);
    CHECK(delta_of_rate(1e-12) == doctest::Approx(3e-12 * std::log(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(delta_of_rate(0.0), std::domain_error);
    CHECK_THROWS_AS(delta_of_rate(-1.0), std::domain_error);
}

TEST_CASE("delta_of_rate is strictly increasing") {
    double previous = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double d = delta_of_rate(0.01 * i);
        CHECK(d > previous);
        previous = d;
    }
}

TEST_CASE("SystemConfig validation") {
    SystemConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.delta1() == 1.0);
    c.omega_y = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.omega_y = 1.0;
    c.p_avg_relay = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS((ChannelState{-1.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("sampler is deterministic per (seed, stream)") {
    FadingSampler a(42, 3, 1.0, 2.0);
    FadingSampler b(42, 3, 1.0, 2.0);
    FadingSampler other_stream(42, 4, 1.0, 2.0);
    int differ = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto sa = sample_state(a);
        const auto sb = sample_state(b);
        CHECK(sa.x == sb.x);
        CHECK(sa.y == sb.y);
        differ += other_stream.next().x != sa.x ? 1 : 0;
    }
    CHECK(differ == 1000);
}

TEST_CASE("doubling omega doubles every draw exactly") {
    FadingSampler unit(9, 0, 1.0, 1.0);
    FadingSampler twice(9, 0, 2.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto u = unit.next();
        const auto t = twice.next();
        CHECK(t.x == 2.0 * u.x);
        CHECK(t.y == u.y);
    }
}

TEST_CASE("exponential statistics over 1e6 draws") {
    constexpr int n = 1'000'000;
    FadingSampler sampler(2024, 0, 1.0, 1.0);
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) {
        const auto s = sampler.next();
        CHECK_FALSE(s.x < 0.0);
        xs[i] = s.x;
        ys[i] = s.y;
    }
    double sx = 0.0, sy = 0.0, sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
        syy += ys[i] * ys[i];
    }
    const double mx = sx / n, my = sy / n;
    CHECK(std::abs(mx - 1.0) < 0.01);
    const double cov = sxy / n - mx * my;
    const double corr = cov / std::sqrt((sxx / n - mx * mx) * (syy / n - my * my));
    CHECK(std::abs(corr) < 0.005);

    // Kolmogorov-Smirnov against 1 - e^-x; 1% critical value 1.628 / sqrt(n).
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = -std::expm1(-xs[i]);
        d = std::max({d, (i + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("substream seeds are distinct") {
    CHECK(substream_seed(1, 0) != substream_seed(1, 1));
    CHECK(substream_seed(1, 0) != substream_seed(2, 0));
    CHECK(substream_seed(5, 7) == substream_seed(5, 7));
}
