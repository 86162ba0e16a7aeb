#pragma once

#include <cstdint>
#include <vector>

#include "hbstat/heart_series.hpp"

namespace hbstat {

/// Piecewise-Gaussian interval generator used by demos and tests. Each
/// segment draws `beats` intervals around `mean_ms` (optionally drifting by
/// `trend_ms_per_beat`); timestamps are cumulative interval sums.
struct SynthSegment {
    std::size_t beats = 0;
    double mean_ms = 800.0;
    double std_ms = 0.0;
    double trend_ms_per_beat = 0.0;
};

struct SynthSpec {
    std::vector<SynthSegment> segments;
    std::uint64_t seed = 0;
};

/// Deterministic for a given spec. Throws std::invalid_argument on empty
/// or out-of-range segments.
HeartSeries synth_series(const SynthSpec& spec);

} // namespace hbstat
