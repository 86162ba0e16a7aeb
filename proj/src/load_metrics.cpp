#include "hbstat/load_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbstat {

namespace {

double median_of(std::vector<double>& scratch) {
    const std::size_t n = scratch.size();
    const std::size_t mid = n / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    double hi = scratch[mid];
    if (n % 2 == 1) return hi;
    double lo = *std::max_element(scratch.begin(), scratch.begin() + mid);
    return 0.5 * (lo + hi);
}

} // namespace

double metric_value(const MetricSeries::Entry& e, MetricSource source) {
    switch (source) {
        case MetricSource::metric1: return e.metric1;
        case MetricSource::metric2: return e.metric2;
        case MetricSource::kurtosis: return e.beta2;
        case MetricSource::skew2: return e.beta1;
    }
    return e.metric1;
}

MetricSeries metric_series(const Trajectory& trajectory) {
    if (trajectory.points.empty()) throw std::invalid_argument("empty trajectory");
    MetricSeries series;
    series.entries.reserve(trajectory.points.size());
    for (const TimedSummary& ts : trajectory.points) {
        const PearsonPoint p = to_pearson(ts.summary);
        series.entries.push_back({ts.t, metric1(p), metric2(p), p.beta1, p.beta2});
    }
    return series;
}

SlopeEstimate slope(const MetricSeries& series, double t0, double t1, MetricSource which) {
    if (!(t0 < t1)) throw std::invalid_argument("slope interval must have t0 < t1");

    std::vector<double> ts, vs;
    for (const auto& e : series.entries) {
        if (e.t < t0 || e.t > t1) continue;
        ts.push_back(e.t);
        vs.push_back(metric_value(e, which));
    }
    const std::size_t k = ts.size();
    if (k < 3) throw std::invalid_argument("slope needs at least 3 points in the interval");

    double mean_t = 0.0, mean_v = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mean_t += ts[i];
        mean_v += vs[i];
    }
    mean_t /= static_cast<double>(k);
    mean_v /= static_cast<double>(k);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dt = ts[i] - mean_t;
        sxx += dt * dt;
        sxy += dt * (vs[i] - mean_v);
    }
    if (sxx <= 0.0) throw std::domain_error("all points share one timestamp");

    SlopeEstimate est;
    est.t0 = t0;
    est.t1 = t1;
    est.slope = sxy / sxx;
    est.intercept = mean_v - est.slope * mean_t;
    est.point_count = k;

    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = vs[i] - (est.intercept + est.slope * ts[i]);
        rss += r * r;
    }
    est.residual_std = std::sqrt(rss / static_cast<double>(k - 2));
    return est;
}

std::vector<RegimeEvent> detect_regime_changes(const MetricSeries& series,
                                               const PeakConfig& config) {
    const auto& entries = series.entries;
    const std::size_t n = entries.size();
    const std::size_t hw = config.baseline_half_width;
    if (hw < 1) throw std::invalid_argument("baseline half-width must be >= 1");
    if (n < 2 * hw + 1) throw std::invalid_argument("series shorter than the baseline window");

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = metric_value(entries[i], config.source);

    // Residual above the rolling-median baseline plus the rolling MAD,
    // both over the complete centered window only (truncated edge windows
    // produce inflated residuals). MAD carries the 1.4826 normal-consistency
    // factor so k is a sigma multiple.
    constexpr double kMadToSigma = 1.4826;
    std::vector<double> resid(n, 0.0), mad(n, 0.0);
    std::vector<double> scratch;
    scratch.reserve(2 * hw + 1);
    for (std::size_t i = hw; i + hw < n; ++i) {
        scratch.assign(x.begin() + static_cast<std::ptrdiff_t>(i - hw),
                       x.begin() + static_cast<std::ptrdiff_t>(i + hw) + 1);
        const double med = median_of(scratch);
        for (double& v : scratch) v = std::abs(v - med);
        mad[i] = kMadToSigma * median_of(scratch);
        resid[i] = x[i] - med;
    }

    constexpr double kMadFloor = 1e-12; // keeps flat series from dividing by zero
    std::vector<std::size_t> candidates;
    for (std::size_t i = hw; i + hw < n; ++i) {
        const bool left_ok = i == 0 || x[i] >= x[i - 1];
        const bool right_ok = i == n - 1 || x[i] >= x[i + 1];
        if (!left_ok || !right_ok) continue;
        if (resid[i] > config.threshold_k * std::max(mad[i], kMadFloor)) {
            candidates.push_back(i);
        }
    }

    // merge detections within one half-width, keeping the strongest
    std::vector<RegimeEvent> events;
    std::size_t g = 0;
    while (g < candidates.size()) {
        std::size_t best = candidates[g];
        std::size_t h = g + 1;
        while (h < candidates.size() && candidates[h] - candidates[h - 1] <= hw) {
            if (resid[candidates[h]] > resid[best]) best = candidates[h];
            ++h;
        }
        events.push_back({entries[best].t, resid[best], config.source, best});
        g = h;
    }
    return events;
}

std::optional<double> recovery_delay(const MetricSeries& series, double exercise_start_t,
                                     double exercise_end_t, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(exercise_start_t < exercise_end_t)) {
        throw std::invalid_argument("exercise start must precede end");
    }

    std::vector<double> pre;
    for (const auto& e : series.entries) {
        if (e.t < exercise_start_t) pre.push_back(e.metric1);
    }
    if (pre.empty()) throw std::invalid_argument("no pre-exercise baseline available");
    const double baseline = median_of(pre);

    // first post-exercise time from which metric1 stays within delta
    const auto& entries = series.entries;
    std::optional<double> settled;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->t < exercise_end_t) break;
        if (std::abs(it->metric1 - baseline) <= delta) {
            settled = it->t;
        } else {
            break;
        }
    }
    if (!settled) return std::nullopt;
    return *settled - exercise_end_t;
}

} // namespace hbstat
