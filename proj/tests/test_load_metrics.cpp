#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hbstat/load_metrics.hpp"
#include "hbstat/moments.hpp"

using namespace hbstat;

namespace {

MetricSeries series_from_pairs(const std::vector<std::pair<double, double>>& tv) {
    // entries with metric1 set directly; other fields mirror it
    MetricSeries s;
    for (const auto& [t, v] : tv) s.entries.push_back({t, v, v, v, v});
    return s;
}

MetricSeries linear_metric_series(double slope_per_s, double t0, double t1, double dt,
                                  double noise_sd = 0.0, std::uint64_t seed = 0) {
    hbstat::SplitMix64 rng(seed);
    MetricSeries s;
    for (double t = t0; t <= t1 + 1e-12; t += dt) {
        const double v = slope_per_s * t + noise_sd * rng.next_normal();
        s.entries.push_back({t, v, v, v, v});
    }
    return s;
}

} // namespace

TEST_CASE("metric series maps trajectory points through the Pearson plane") {
    Trajectory traj;
    MomentSummary normal_like;
    normal_like.n = 100;
    normal_like.std_dev = 1.0;
    normal_like.skewness = 0.0;
    normal_like.kurtosis = 3.0;
    for (int i = 0; i < 5; ++i) traj.points.push_back({static_cast<double>(i), normal_like});

    const auto series = metric_series(traj);
    REQUIRE(series.entries.size() == 5);
    for (std::size_t i = 0; i < series.entries.size(); ++i) {
        CHECK(series.entries[i].t == static_cast<double>(i)); // order preserved
        CHECK(series.entries[i].metric1 == doctest::Approx(0.0));
        CHECK(series.entries[i].metric2 == doctest::Approx(1.2));
    }
}

TEST_CASE("single summary at (0, 1.7)") {
    Trajectory traj;
    MomentSummary s;
    s.n = 5;
    s.std_dev = std::sqrt(2.0);
    s.skewness = 0.0;
    s.kurtosis = 1.7;
    traj.points.push_back({1.0, s});
    const auto series = metric_series(traj);
    REQUIRE(series.entries.size() == 1);
    CHECK(series.entries[0].metric1 == doctest::Approx(1.3));
    CHECK(series.entries[0].metric2 == doctest::Approx(0.1));
}

TEST_CASE("metric series rejects an empty trajectory") {
    CHECK_THROWS_AS(metric_series(Trajectory{}), std::invalid_argument);
}

TEST_CASE("metric_series equals mapping summaries one by one") {
    const auto xs = fixtures::uniform_values(300, 15);
    const auto traj = window_trajectory(fixtures::series_from_values(xs), 20, 5);
    const auto series = metric_series(traj);
    REQUIRE(series.entries.size() == traj.points.size());
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto p = to_pearson(traj.points[i].summary);
        CHECK(series.entries[i].metric1 == metric1(p));
        CHECK(series.entries[i].metric2 == metric2(p));
        CHECK(series.entries[i].beta1 == p.beta1);
        CHECK(series.entries[i].beta2 == p.beta2);
    }
}

TEST_CASE("slope of an exact line") {
    const auto series = linear_metric_series(2.0, 0.0, 10.0, 0.5);
    const auto est = slope(series, 0.0, 10.0);
    CHECK(est.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(est.intercept == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(est.residual_std == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("slope of a constant series is zero") {
    const auto series = series_from_pairs({{0, 5}, {1, 5}, {2, 5}, {3, 5}});
    CHECK(slope(series, 0.0, 3.0).slope == doctest::Approx(0.0));
}

TEST_CASE("slope with seeded noise stays near the true value") {
    const auto series = linear_metric_series(2.0, 0.0, 10.0, 0.1, 0.01, 77);
    const auto est = slope(series, 0.0, 10.0);
    CHECK(est.slope > 1.98);
    CHECK(est.slope < 2.02);
}

TEST_CASE("slope guards") {
    const auto series = series_from_pairs({{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(slope(series, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(slope(series, 0.0, 1.0), std::invalid_argument); // 2 points only
}

TEST_CASE("time-reversed slope negates") {
    const auto series = linear_metric_series(1.5, 0.0, 5.0, 0.25, 0.05, 3);
    MetricSeries reversed;
    for (auto it = series.entries.rbegin(); it != series.entries.rend(); ++it) {
        auto e = *it;
        e.t = 5.0 - e.t;
        reversed.entries.push_back(e);
    }
    const double fwd = slope(series, 0.0, 5.0).slope;
    const double bwd = slope(reversed, 0.0, 5.0).slope;
    CHECK(fwd == doctest::Approx(-bwd).epsilon(1e-9));
}

TEST_CASE("flat series yields no regime events, at any threshold") {
    MetricSeries flat;
    for (int i = 0; i < 200; ++i) flat.entries.push_back({static_cast<double>(i), 1.0, 1, 1, 1});
    CHECK(detect_regime_changes(flat).empty());
    PeakConfig strict;
    strict.threshold_k = 8.0; // monotone in k
    CHECK(detect_regime_changes(flat, strict).empty());
}

TEST_CASE("detector needs a full baseline window") {
    MetricSeries tiny;
    for (int i = 0; i < 20; ++i) tiny.entries.push_back({static_cast<double>(i), 1.0, 1, 1, 1});
    CHECK_THROWS_AS(detect_regime_changes(tiny), std::invalid_argument);
}

TEST_CASE("isolated spike is found and adjacent detections merge") {
    MetricSeries s;
    hbstat::SplitMix64 rng(5);
    for (int i = 0; i < 400; ++i) {
        double v = 1.0 + 0.01 * rng.next_normal();
        if (i == 200) v = 3.0;
        if (i == 203) v = 2.5; // inside the merge radius of the main spike
        s.entries.push_back({static_cast<double>(i), v, v, v, v});
    }
    const auto events = detect_regime_changes(s);
    REQUIRE(events.size() == 1);
    CHECK(events[0].index == 200);
    CHECK(events[0].magnitude > 1.5);
}

TEST_CASE("detection is invariant under a constant offset") {
    MetricSeries s;
    hbstat::SplitMix64 rng(9);
    for (int i = 0; i < 300; ++i) {
        double v = 0.02 * rng.next_normal();
        if (i == 150) v = 1.0;
        s.entries.push_back({static_cast<double>(i), v, v, v, v});
    }
    MetricSeries shifted = s;
    for (auto& e : shifted.entries) e.metric1 += 100.0;
    const auto a = detect_regime_changes(s);
    const auto b = detect_regime_changes(shifted);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].index == b[i].index);
}

TEST_CASE("two-regime fixture produces exactly two events near the boundaries") {
    // stride w/4 keeps a regime bump a few entries wide against the
    // 25-entry baseline window
    const std::size_t stride = 25;
    int good = 0;
    const int runs = 20;
    for (int run = 0; run < runs; ++run) {
        const auto series = fixtures::regime_fixture(static_cast<std::uint64_t>(4000 + run));
        const auto traj = window_trajectory(series, 100, stride);
        const auto metrics = metric_series(traj);
        const auto events = detect_regime_changes(metrics);
        if (events.size() != 2) continue;
        // trajectory entry j covers samples [j*stride, j*stride+99]
        const double b1 = static_cast<double>(events[0].index * stride) + 99.0;
        const double b2 = static_cast<double>(events[1].index * stride) + 99.0;
        if (std::abs(b1 - 1000.0) <= 100.0 && std::abs(b2 - 2000.0) <= 100.0) ++good;
    }
    CHECK(good >= 18);
}

TEST_CASE("accumulated metric1 rises through the low-variance segment") {
    const std::size_t stride = 25;
    int good = 0;
    const int runs = 20;
    for (int run = 0; run < runs; ++run) {
        const auto series = fixtures::regime_fixture(static_cast<std::uint64_t>(8000 + run));
        const auto traj = accumulated_trajectory(series, stride);
        const auto metrics = metric_series(traj);
        // exercise covers samples 1000..1999; skip a 100-sample burn-in.
        // entry k summarizes the prefix ending at sample (k+1)*stride - 1.
        bool monotone = true;
        for (std::size_t k = 1; k < metrics.entries.size(); ++k) {
            const std::size_t prev_end = k * stride - 1;
            const std::size_t cur_end = (k + 1) * stride - 1;
            if (prev_end < 1100 || cur_end > 1999) continue;
            if (metrics.entries[k].metric1 < metrics.entries[k - 1].metric1 - 1e-12) {
                monotone = false;
                break;
            }
        }
        if (monotone) ++good;
    }
    CHECK(good >= 18);
}

TEST_CASE("recovery delay on an exponential return") {
    // flat zero baseline before the exercise, exponential decay after it
    const double tau = 30.0, peak = 2.0, delta = 0.1;
    MetricSeries s;
    for (double t = 0.0; t < 50.0; t += 0.5) s.entries.push_back({t, 0.0, 0, 0, 0});
    for (double t = 50.0; t < 100.0; t += 0.5) s.entries.push_back({t, peak, 0, 0, 0});
    for (double t = 100.0; t <= 400.0; t += 0.5) {
        const double v = peak * std::exp(-(t - 100.0) / tau);
        s.entries.push_back({t, v, 0, 0, 0});
    }
    const auto delay = recovery_delay(s, 50.0, 100.0, delta);
    REQUIRE(delay.has_value());
    const double expected = tau * std::log(peak / delta);
    CHECK(*delay > 0.9 * expected);
    CHECK(*delay < 1.1 * expected);
}

TEST_CASE("recovery delay is zero when already settled") {
    MetricSeries s;
    for (double t = 0.0; t <= 200.0; t += 1.0) s.entries.push_back({t, 0.05, 0, 0, 0});
    const auto delay = recovery_delay(s, 50.0, 100.0, 0.1);
    REQUIRE(delay.has_value());
    CHECK(*delay == doctest::Approx(0.0));
}

TEST_CASE("recovery delay is none when the series never settles") {
    MetricSeries s;
    for (double t = 0.0; t < 50.0; t += 1.0) s.entries.push_back({t, 0.0, 0, 0, 0});
    for (double t = 50.0; t <= 200.0; t += 1.0) s.entries.push_back({t, 2.0, 0, 0, 0});
    CHECK_FALSE(recovery_delay(s, 50.0, 100.0, 0.1).has_value());
}

TEST_CASE("recovery delay requires a pre-exercise baseline") {
    MetricSeries s;
    for (double t = 100.0; t <= 200.0; t += 1.0) s.entries.push_back({t, 0.5, 0, 0, 0});
    CHECK_THROWS_AS(recovery_delay(s, 50.0, 100.0, 0.1), std::invalid_argument);
}
