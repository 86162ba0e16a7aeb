#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hbstat/moments.hpp"
#include "hbstat/pearson.hpp"

using namespace hbstat;

TEST_CASE("to_pearson squares the skewness") {
    MomentSummary s;
    s.n = 100;
    s.std_dev = 1.0;
    SUBCASE("normal-shaped summary") {
        s.skewness = 0.0;
        s.kurtosis = 3.0;
        const auto p = to_pearson(s);
        CHECK(p.beta1 == 0.0);
        CHECK(p.beta2 == 3.0);
    }
    SUBCASE("negative skew maps to positive beta1") {
        s.skewness = -0.5;
        s.kurtosis = 2.5;
        const auto p = to_pearson(s);
        CHECK(p.beta1 == doctest::Approx(0.25));
        CHECK(p.beta2 == doctest::Approx(2.5));
    }
}

TEST_CASE("to_pearson from the 1..5 sample lands at (0, 1.7)") {
    const auto s = batch_moments(std::vector<double>{1, 2, 3, 4, 5});
    const auto p = to_pearson(s);
    CHECK(p.beta1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.beta2 == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("to_pearson rejects degenerate summaries") {
    MomentSummary s; // n = 0, zero variance
    CHECK_THROWS_AS(to_pearson(s), std::domain_error);
}

TEST_CASE("metric1 distances") {
    CHECK(metric1({0.0, 3.0}) == 0.0);
    CHECK(metric1({0.0, 1.7}) == doctest::Approx(1.3));
    CHECK(metric1({3.0, 4.0}) == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("metric2 distances") {
    CHECK(metric2({0.0, 1.8}) == 0.0);
    CHECK(metric2({0.0, 1.7}) == doctest::Approx(0.1));
    CHECK(metric2({0.0, 3.0}) == doctest::Approx(1.2)); // landmark separation
}

TEST_CASE("metrics are zero only at their landmark") {
    hbstat::SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const PearsonPoint p{4.0 * rng.next_double(), 1.0 + 8.0 * rng.next_double()};
        CHECK(metric1(p) >= 0.0);
        CHECK(metric2(p) >= 0.0);
        if (metric1(p) == 0.0) {
            CHECK(p.beta1 == 0.0);
            CHECK(p.beta2 == 3.0);
        }
        if (metric2(p) == 0.0) {
            CHECK(p.beta1 == 0.0);
            CHECK(p.beta2 == 1.8);
        }
    }
}

TEST_CASE("region classification") {
    CHECK(classify_region({1.0, 1.5}).region == Region::infeasible);
    // symmetric beta with both shape parameters 2: kurtosis 15/7
    CHECK(classify_region({0.0, 15.0 / 7.0}).region == Region::beta_region);
    // the gamma line is the inclusive upper boundary
    CHECK(classify_region({4.0, 9.0}).region == Region::beta_region);
    CHECK(classify_region({0.0, 3.0}).region == Region::near_normal);
    CHECK(classify_region({0.0, 1.8}).region == Region::near_uniform);
    CHECK(classify_region({0.0, 3.05}).region == Region::near_normal);
    // logistic sits above the gamma line at beta1 = 0
    CHECK(classify_region({0.0, 4.2}).region == Region::other);
    CHECK(classify_region({0.5, 6.0}).region == Region::other);
}

TEST_CASE("label precedence is fixed") {
    // inside the beta band but within tolerance of the uniform landmark
    CHECK(classify_region({0.0, 1.85}).region == Region::near_uniform);
    // near-normal beats beta_region as well
    CHECK(classify_region({0.02, 2.95}).region == Region::near_normal);
    // a barely infeasible point is infeasible regardless of tolerance
    CHECK(classify_region({0.5, 1.2}, 10.0).region == Region::infeasible);
}

TEST_CASE("classification is total and deterministic") {
    hbstat::SplitMix64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const PearsonPoint p{5.0 * rng.next_double(), 12.0 * rng.next_double()};
        const auto a = classify_region(p);
        const auto b = classify_region(p);
        CHECK(a.region == b.region);
    }
}

TEST_CASE("landmarks carry the analytic coordinates") {
    const auto marks = landmarks();
    REQUIRE(marks.size() == 4);
    auto find = [&](std::string_view name) -> const Landmark& {
        for (const auto& m : marks) {
            if (m.name == name) return m;
        }
        FAIL("missing landmark");
        return marks[0];
    };
    CHECK(find("normal").point.beta2 == 3.0);
    CHECK(find("normal").point.beta1 == 0.0);
    CHECK(find("uniform").point.beta2 == doctest::Approx(1.8)); // 9/5
    CHECK(find("exponential").point.beta1 == 4.0);
    CHECK(find("exponential").point.beta2 == 9.0);
    CHECK(find("logistic").point.beta2 == doctest::Approx(4.2));

    const auto bounds = beta_region_boundaries();
    CHECK(bounds[0].intercept == 1.0);
    CHECK(bounds[0].slope == 1.0);
    CHECK(bounds[1].intercept == 3.0);
    CHECK(bounds[1].slope == 1.5);
}

TEST_CASE("affine invariance end to end") {
    const auto xs = fixtures::skewed_values(2000, 9);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 3.5 * xs[i] - 120.0;
    const auto px = to_pearson(batch_moments(xs));
    const auto py = to_pearson(batch_moments(ys));
    CHECK(fixtures::rel_diff(px.beta1, py.beta1) <= 1e-9);
    CHECK(fixtures::rel_diff(px.beta2, py.beta2) <= 1e-9);
}

TEST_CASE("large-sample draws classify near their landmark") {
    int normal_hits = 0, uniform_hits = 0, beta_hits = 0;
    const int runs = 20;
    for (int r = 0; r < runs; ++r) {
        const auto seed = static_cast<std::uint64_t>(1000 + r);
        const auto n = fixtures::normal_values(10000, seed);
        if (classify_region(to_pearson(batch_moments(n)), 0.25).region == Region::near_normal) {
            ++normal_hits;
        }
        const auto u = fixtures::uniform_values(10000, seed, 0.0, 1.0);
        if (classify_region(to_pearson(batch_moments(u)), 0.25).region == Region::near_uniform) {
            ++uniform_hits;
        }
        const auto b = fixtures::beta22_values(10000, seed);
        if (classify_region(to_pearson(batch_moments(b)), 0.25).region == Region::beta_region) {
            ++beta_hits;
        }
    }
    CHECK(normal_hits >= 19);
    CHECK(uniform_hits >= 19);
    CHECK(beta_hits >= 19);
}
