#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hbstat/moments.hpp"
#include "hbstat/pearson.hpp"

namespace hbstat {

/// Per-point Pearson metrics along a trajectory.
struct MetricSeries {
    struct Entry {
        double t;
        double metric1;
        double metric2;
        double beta1;
        double beta2;
    };
    std::vector<Entry> entries;
};

/// Which component of the metric series a detector or fit reads.
enum class MetricSource { metric1, metric2, kurtosis, skew2 };

struct RegimeEvent {
    double t;
    double magnitude; // peak height above the rolling-median baseline
    MetricSource source;
    std::size_t index; // entry index in the metric series
};

struct SlopeEstimate {
    double t0;
    double t1;
    double slope; // metric units per second
    double intercept;
    double residual_std;
    std::size_t point_count;
};

struct PeakConfig {
    std::size_t baseline_half_width = 25; // samples
    double threshold_k = 4.0;             // multiplier on the rolling MAD
    MetricSource source = MetricSource::metric1;
};

/// Maps a trajectory through the Pearson plane. Degenerate trajectory
/// points were already skipped upstream. Throws on an empty trajectory.
MetricSeries metric_series(const Trajectory& trajectory);

/// Ordinary least-squares line of the chosen metric vs. time over
/// [t0, t1]. Requires at least 3 entries in the interval.
SlopeEstimate slope(const MetricSeries& series, double t0, double t1,
                    MetricSource which = MetricSource::metric1);

/// Peak detector: a local maximum exceeding the rolling-median baseline by
/// k * rolling MAD (normal-consistent scaling); detections closer than one
/// half-width merge into the highest. Baselines use complete centered
/// windows only, so the first and last half-width entries cannot fire.
/// Throws if the series is shorter than the baseline window. Works best
/// when the series is sampled coarsely enough that a regime bump spans
/// only a few entries, e.g. a window trajectory with stride near w/4.
std::vector<RegimeEvent> detect_regime_changes(const MetricSeries& series,
                                               const PeakConfig& config = {});

/// Time after exercise_end_t at which metric1 falls and stays within
/// `delta` of the pre-exercise baseline (median of metric1 before
/// exercise_start_t), minus exercise_end_t. nullopt if it never settles.
/// Throws std::invalid_argument when no pre-exercise entries exist.
std::optional<double> recovery_delay(const MetricSeries& series, double exercise_start_t,
                                     double exercise_end_t, double delta = 0.1);

double metric_value(const MetricSeries::Entry& e, MetricSource source);

} // namespace hbstat
