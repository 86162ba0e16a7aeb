#pragma once

// Shared test fixtures: independent brute-force oracles and seeded data
// generators. Everything here must stay independent of the streaming
// implementation paths it is used to check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hbstat/activity.hpp"
#include "hbstat/heart_series.hpp"
#include "hbstat/rng.hpp"

namespace fixtures {

struct NaiveMoments {
    double mean, std_dev, skewness, kurtosis;
};

// plain two-loop computation with ordinary summation; the reference for
// everything else
inline NaiveMoments naive_moments(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, std::sqrt(m2), m3 / (m2 * std::sqrt(m2)), m4 / (m2 * m2)};
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// --- seeded value generators -----------------------------------------------

inline std::vector<double> uniform_values(std::size_t n, std::uint64_t seed, double lo = 250.0,
                                          double hi = 3000.0) {
    hbstat::SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (double& v : out) v = lo + (hi - lo) * rng.next_double();
    return out;
}

inline std::vector<double> normal_values(std::size_t n, std::uint64_t seed, double mean = 0.0,
                                         double sd = 1.0) {
    hbstat::SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (double& v : out) v = mean + sd * rng.next_normal();
    return out;
}

// right-skewed values inside [lo, hi]
inline std::vector<double> skewed_values(std::size_t n, std::uint64_t seed, double lo = 250.0,
                                         double hi = 3000.0) {
    hbstat::SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (double& v : out) {
        const double u = rng.next_double();
        v = lo + (hi - lo) * u * u * u;
    }
    return out;
}

// gamma(2,1) via sum of two exponentials, then beta(2,2) = g1 / (g1 + g2)
inline std::vector<double> beta22_values(std::size_t n, std::uint64_t seed) {
    hbstat::SplitMix64 rng(seed);
    auto gamma2 = [&]() {
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        while (u1 <= 0.0) u1 = rng.next_double();
        while (u2 <= 0.0) u2 = rng.next_double();
        return -std::log(u1) - std::log(u2);
    };
    std::vector<double> out(n);
    for (double& v : out) {
        const double a = gamma2();
        const double b = gamma2();
        v = a / (a + b);
    }
    return out;
}

// --- heartbeat series helpers ----------------------------------------------

inline hbstat::HeartSeries series_from_values(const std::vector<double>& hb_ms) {
    hbstat::HeartSeries s;
    double clock_ms = 0.0;
    for (double hb : hb_ms) {
        clock_ms += hb;
        s.samples.push_back({clock_ms / 1000.0, hb, hbstat::hb_to_hr(std::max(hb, 1.0))});
    }
    return s;
}

// rest / exercise / rest variance pattern: sigma 80 / 15 / 80 ms around a
// common 800 ms mean, 1000 beats per segment
inline hbstat::HeartSeries regime_fixture(std::uint64_t seed, std::size_t seg_len = 1000,
                                          double sigma_rest = 80.0, double sigma_ex = 15.0) {
    hbstat::SplitMix64 rng(seed);
    std::vector<double> hb;
    hb.reserve(3 * seg_len);
    auto emit = [&](double sigma, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) hb.push_back(800.0 + sigma * rng.next_normal());
    };
    emit(sigma_rest, seg_len);
    emit(sigma_ex, seg_len);
    emit(sigma_rest, seg_len);
    return series_from_values(hb);
}

// --- activity fixture --------------------------------------------------------

// Three activity clusters separated in the (pace, average HR) plane.
// Adjacent pace ranges overlap, so dynamic features alone leave boundary
// records ambiguous; the AHR ranges are disjoint and resolve them. This
// gives the heart-rate features genuine added value over models that only
// see distance and duration.
inline std::vector<hbstat::ExerciseRecord> activity_fixture(std::size_t per_class,
                                                            std::uint64_t seed) {
    hbstat::SplitMix64 rng(seed);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_double(); };

    std::vector<hbstat::ExerciseRecord> records;
    struct ClassSpec {
        hbstat::ActivityType type;
        double pace_lo, pace_hi; // min/km
        double ahr_lo, ahr_hi;   // bpm
    };
    const ClassSpec classes[] = {
        {hbstat::ActivityType::running, 4.0, 6.5, 150.0, 170.0},
        {hbstat::ActivityType::skiing, 6.0, 9.5, 125.0, 140.0},
        {hbstat::ActivityType::walking, 9.0, 12.0, 95.0, 115.0},
    };
    for (const auto& cls : classes) {
        for (std::size_t i = 0; i < per_class; ++i) {
            hbstat::ExerciseRecord r;
            r.activity = cls.type;
            const double pace = uni(cls.pace_lo, cls.pace_hi);
            r.distance_m = uni(2000.0, 8000.0);
            r.duration_s = pace * 60.0 * r.distance_m / 1000.0;
            r.hr_avg = uni(cls.ahr_lo, cls.ahr_hi);
            r.hr_rest = uni(50.0, 65.0);
            r.hr_min = r.hr_rest + uni(5.0, 15.0);
            r.hr_max = r.hr_avg + uni(10.0, 25.0);
            r.hr_rest_after = r.hr_rest + uni(0.0, 10.0);
            records.push_back(r);
        }
    }
    return records;
}

} // namespace fixtures
