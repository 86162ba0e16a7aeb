#include "hbstat/synth.hpp"

#include <stdexcept>

#include "hbstat/rng.hpp"

namespace hbstat {

HeartSeries synth_series(const SynthSpec& spec) {
    if (spec.segments.empty()) throw std::invalid_argument("synthetic spec has no segments");
    for (const auto& seg : spec.segments) {
        if (seg.beats < 1) throw std::invalid_argument("segment duration must be >= 1 beat");
        if (seg.std_ms < 0.0) throw std::invalid_argument("segment std must be >= 0");
        if (seg.mean_ms < kMinPlausibleHbMs || seg.mean_ms > kMaxPlausibleHbMs) {
            throw std::invalid_argument("segment mean outside the plausible interval range");
        }
    }

    HeartSeries series;
    SplitMix64 rng(spec.seed);
    double clock_ms = 0.0;
    for (const auto& seg : spec.segments) {
        for (std::size_t i = 0; i < seg.beats; ++i) {
            double hb = seg.mean_ms + seg.trend_ms_per_beat * static_cast<double>(i) +
                        seg.std_ms * rng.next_normal();
            // intervals must stay positive; clamp far-tail draws
            if (hb < 1.0) hb = 1.0;
            clock_ms += hb;
            series.samples.push_back({clock_ms / 1000.0, hb, hb_to_hr(hb)});
        }
    }
    return series;
}

} // namespace hbstat
