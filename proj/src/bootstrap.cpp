#include "hbstat/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hbstat/moments.hpp"
#include "hbstat/rng.hpp"

namespace hbstat {

namespace {

// linear interpolation between order statistics of a sorted vector
double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

BootstrapCloud bootstrap_cloud(std::span<const double> samples, const BootstrapConfig& config,
                               unsigned workers) {
    if (samples.size() < 4) throw std::invalid_argument("bootstrap requires at least 4 samples");
    if (config.trials < 1) throw std::invalid_argument("trial count must be >= 1");
    const std::size_t m = config.subsample == 0 ? samples.size() : config.subsample;
    if (m < 4) throw std::invalid_argument("subsample size must be >= 4");
    if (workers == 0) workers = 1;

    const std::uint32_t trials = config.trials;
    std::vector<PearsonPoint> slots(trials);
    std::vector<char> degenerate(trials, 0);

    // Each trial owns a PRNG substream keyed by (seed, trial index), so the
    // partitioning below is free to change without changing the result.
    auto run_range = [&](std::uint32_t begin, std::uint32_t end) {
        std::vector<double> resample(m);
        for (std::uint32_t trial = begin; trial < end; ++trial) {
            SplitMix64 rng = substream(config.seed, trial);
            for (std::size_t i = 0; i < m; ++i) {
                resample[i] = samples[rng.next_bounded(samples.size())];
            }
            if (auto s = try_batch_moments(resample)) {
                slots[trial] = to_pearson(*s);
            } else {
                degenerate[trial] = 1;
            }
        }
    };

    if (workers == 1 || trials < 2 * workers) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint32_t begin = w * chunk;
            const std::uint32_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    BootstrapCloud cloud;
    cloud.seed = config.seed;
    cloud.points.reserve(trials);
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
        if (degenerate[trial]) {
            ++cloud.degenerate_count;
        } else {
            cloud.points.push_back(slots[trial]);
        }
    }
    if (cloud.points.empty()) throw std::domain_error("all bootstrap trials degenerate");

    const double n = static_cast<double>(cloud.points.size());
    double sum1 = 0.0, sum2 = 0.0;
    for (const auto& p : cloud.points) {
        sum1 += p.beta1;
        sum2 += p.beta2;
    }
    cloud.centroid = {sum1 / n, sum2 / n};
    double c11 = 0.0, c12 = 0.0, c22 = 0.0;
    for (const auto& p : cloud.points) {
        const double d1 = p.beta1 - cloud.centroid.beta1;
        const double d2 = p.beta2 - cloud.centroid.beta2;
        c11 += d1 * d1;
        c12 += d1 * d2;
        c22 += d2 * d2;
    }
    cloud.dispersion = {c11 / n, c12 / n, c22 / n};
    return cloud;
}

CloudSummary cloud_summary(const BootstrapCloud& cloud) {
    if (cloud.points.empty()) throw std::invalid_argument("empty bootstrap cloud");

    CloudSummary s;
    s.centroid = cloud.centroid;
    s.std_beta1 = std::sqrt(cloud.dispersion.b1b1);
    s.std_beta2 = std::sqrt(cloud.dispersion.b2b2);
    s.point_count = cloud.points.size();
    s.degenerate_count = cloud.degenerate_count;

    std::vector<double> b1, b2;
    b1.reserve(cloud.points.size());
    b2.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        b1.push_back(p.beta1);
        b2.push_back(p.beta2);
    }
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    s.beta1_lo = quantile_sorted(b1, 0.025);
    s.beta1_hi = quantile_sorted(b1, 0.975);
    s.beta2_lo = quantile_sorted(b2, 0.025);
    s.beta2_hi = quantile_sorted(b2, 0.975);
    return s;
}

} // namespace hbstat
