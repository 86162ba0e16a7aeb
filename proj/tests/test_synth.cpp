#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hbstat/synth.hpp"

using namespace hbstat;

TEST_CASE("constant segment produces identical beats") {
    SynthSpec spec;
    spec.segments = {{100, 800.0, 0.0, 0.0}};
    const auto series = synth_series(spec);
    REQUIRE(series.samples.size() == 100);
    for (const auto& s : series.samples) CHECK(s.hb_ms == 800.0);
    CHECK(series.samples.back().t == doctest::Approx(80.0)); // cumulative clock
}

TEST_CASE("same seed gives an identical series") {
    SynthSpec spec;
    spec.segments = {{50, 900.0, 40.0, 0.0}, {50, 700.0, 10.0, 0.0}};
    spec.seed = 77;
    const auto a = synth_series(spec);
    const auto b = synth_series(spec);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].hb_ms == b.samples[i].hb_ms);
        CHECK(a.samples[i].t == b.samples[i].t);
    }
}

TEST_CASE("sample std tracks the requested std") {
    SynthSpec spec;
    spec.segments = {{10000, 800.0, 60.0, 0.0}};
    spec.seed = 5;
    const auto series = synth_series(spec);
    std::vector<double> hb;
    for (const auto& s : series.samples) hb.push_back(s.hb_ms);
    const auto m = fixtures::naive_moments(hb);
    CHECK(std::abs(m.std_dev - 60.0) / 60.0 < 0.1);
    CHECK(std::abs(m.mean - 800.0) < 5.0);
}

TEST_CASE("linear trend drifts the mean") {
    SynthSpec spec;
    spec.segments = {{100, 700.0, 0.0, 2.0}};
    const auto series = synth_series(spec);
    CHECK(series.samples.front().hb_ms == doctest::Approx(700.0));
    CHECK(series.samples.back().hb_ms == doctest::Approx(700.0 + 2.0 * 99.0));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(synth_series(SynthSpec{}), std::invalid_argument);
    SynthSpec bad;
    bad.segments = {{0, 800.0, 10.0, 0.0}};
    CHECK_THROWS_AS(synth_series(bad), std::invalid_argument);
    bad.segments = {{10, 800.0, -1.0, 0.0}};
    CHECK_THROWS_AS(synth_series(bad), std::invalid_argument);
    bad.segments = {{10, 100.0, 1.0, 0.0}}; // mean below the plausible window
    CHECK_THROWS_AS(synth_series(bad), std::invalid_argument);
}
