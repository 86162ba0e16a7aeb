#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hbstat/pearson.hpp"

namespace hbstat {

struct BootstrapConfig {
    std::uint32_t trials = 1000;
    std::size_t subsample = 0; // 0 means "use the input size"
    std::uint64_t seed = 0;
};

/// 2x2 covariance of (beta1, beta2), population normalization.
struct Covariance2 {
    double b1b1 = 0.0;
    double b1b2 = 0.0;
    double b2b2 = 0.0;
};

struct BootstrapCloud {
    std::vector<PearsonPoint> points; // in trial order, degenerate trials excluded
    std::uint32_t degenerate_count = 0;
    PearsonPoint centroid;
    Covariance2 dispersion;
    std::uint64_t seed = 0; // echoed for reproducibility
};

struct CloudSummary {
    PearsonPoint centroid;
    double std_beta1 = 0.0;
    double std_beta2 = 0.0;
    // axis-aligned 95% quantile box (2.5th..97.5th percentiles)
    double beta1_lo = 0.0, beta1_hi = 0.0;
    double beta2_lo = 0.0, beta2_hi = 0.0;
    std::size_t point_count = 0;
    std::uint32_t degenerate_count = 0;
};

/// Resamples `config.subsample` values with replacement per trial, maps
/// each resample onto the Pearson plane and collects the cloud. Each trial
/// draws from its own PRNG substream keyed by (seed, trial), so the result
/// is a pure function of (samples, config) for any worker count.
/// Throws std::invalid_argument for fewer than 4 samples or subsample < 4,
/// std::domain_error when every trial is degenerate.
BootstrapCloud bootstrap_cloud(std::span<const double> samples, const BootstrapConfig& config,
                               unsigned workers = 1);

/// Throws std::invalid_argument on an empty cloud.
CloudSummary cloud_summary(const BootstrapCloud& cloud);

} // namespace hbstat
