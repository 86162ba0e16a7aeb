#include "hbstat/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "hbstat/heart_series.hpp"

namespace hbstat {

namespace {

// Neumaier variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

MomentSummary finalize(std::uint64_t n, double mean, double m2_sum, double m3_sum,
                       double m4_sum) {
    const double dn = static_cast<double>(n);
    const double m2 = m2_sum / dn;
    const double m3 = m3_sum / dn;
    const double m4 = m4_sum / dn;
    MomentSummary s;
    s.n = n;
    s.mean = mean;
    s.std_dev = std::sqrt(m2);
    s.skewness = m3 / (m2 * std::sqrt(m2));
    s.kurtosis = m4 / (m2 * m2);
    return s;
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite sample value");
}

} // namespace

void MomentAccumulator::add(double x) {
    require_finite(x);
    const std::uint64_t n1 = n_;
    n_ += 1;
    const double dn = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / dn;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * static_cast<double>(n1);
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (dn * dn - 3.0 * dn + 3.0) + 6.0 * delta_n2 * m2_ -
           4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (dn - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

MomentAccumulator MomentAccumulator::merged(const MomentAccumulator& a,
                                            const MomentAccumulator& b) {
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;

    MomentAccumulator out;
    const double na = static_cast<double>(a.n_);
    const double nb = static_cast<double>(b.n_);
    const double n = na + nb;
    const double delta = b.mean_ - a.mean_;
    const double delta2 = delta * delta;

    out.n_ = a.n_ + b.n_;
    out.mean_ = a.mean_ + delta * nb / n;
    out.m2_ = a.m2_ + b.m2_ + delta2 * na * nb / n;
    out.m3_ = a.m3_ + b.m3_ + delta2 * delta * na * nb * (na - nb) / (n * n) +
              3.0 * delta * (na * b.m2_ - nb * a.m2_) / n;
    out.m4_ = a.m4_ + b.m4_ +
              delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
              6.0 * delta2 * (na * na * b.m2_ + nb * nb * a.m2_) / (n * n) +
              4.0 * delta * (na * b.m3_ - nb * a.m3_) / n;
    return out;
}

std::optional<MomentSummary> MomentAccumulator::try_summary() const {
    if (!can_summarize()) return std::nullopt;
    return finalize(n_, mean_, m2_, m3_, m4_);
}

MomentSummary MomentAccumulator::summary() const {
    if (n_ < 4) throw std::invalid_argument("moment summary requires at least 4 samples");
    if (m2_ <= 0.0) throw std::domain_error("degenerate sample: zero variance");
    return finalize(n_, mean_, m2_, m3_, m4_);
}

WindowAccumulator::WindowAccumulator(std::size_t capacity) : capacity_(capacity) {
    if (capacity < 4) throw std::invalid_argument("window capacity must be at least 4");
    buffer_.reserve(capacity);
}

void WindowAccumulator::push(double x) {
    require_finite(x);
    if (buffer_.empty()) shift_ = x; // provisional shift until the window fills

    double evicted = 0.0;
    bool evict = false;
    if (buffer_.size() == capacity_) {
        evicted = buffer_[head_];
        buffer_[head_] = x;
        head_ = (head_ + 1) % capacity_;
        evict = true;
    } else {
        buffer_.push_back(x);
    }

    const double d = x - shift_;
    const double d2 = d * d;
    auto apply = [&](double v1, double v2, double v3, double v4) {
        CompensatedSum cs;
        cs.sum = s1_; cs.comp = c1_; cs.add(v1); s1_ = cs.sum; c1_ = cs.comp;
        cs.sum = s2_; cs.comp = c2_; cs.add(v2); s2_ = cs.sum; c2_ = cs.comp;
        cs.sum = s3_; cs.comp = c3_; cs.add(v3); s3_ = cs.sum; c3_ = cs.comp;
        cs.sum = s4_; cs.comp = c4_; cs.add(v4); s4_ = cs.sum; c4_ = cs.comp;
    };
    apply(d, d2, d2 * d, d2 * d2);
    if (evict) {
        const double e = evicted - shift_;
        const double e2 = e * e;
        apply(-e, -e2, -e2 * e, -e2 * e2);
    }

    ++pushes_since_recompute_;
    const bool first_fill = !evict && buffer_.size() == capacity_;
    if (first_fill || pushes_since_recompute_ >= kRecomputeInterval) recompute();
}

void WindowAccumulator::recompute() {
    // re-center the power sums on the current buffer mean to bound drift
    double sum = 0.0;
    for (double v : buffer_) sum += v;
    shift_ = sum / static_cast<double>(buffer_.size());

    CompensatedSum a1, a2, a3, a4;
    for (double v : buffer_) {
        const double d = v - shift_;
        const double d2 = d * d;
        a1.add(d);
        a2.add(d2);
        a3.add(d2 * d);
        a4.add(d2 * d2);
    }
    s1_ = a1.sum; c1_ = a1.comp;
    s2_ = a2.sum; c2_ = a2.comp;
    s3_ = a3.sum; c3_ = a3.comp;
    s4_ = a4.sum; c4_ = a4.comp;
    pushes_since_recompute_ = 0;
}

std::vector<double> WindowAccumulator::contents() const {
    std::vector<double> out;
    out.reserve(buffer_.size());
    if (buffer_.size() < capacity_) {
        out = buffer_;
    } else {
        for (std::size_t i = 0; i < capacity_; ++i) {
            out.push_back(buffer_[(head_ + i) % capacity_]);
        }
    }
    return out;
}

bool WindowAccumulator::can_summarize() const {
    return buffer_.size() >= 4 && (s2_ + c2_) > 0.0;
}

std::optional<MomentSummary> WindowAccumulator::try_summary() const {
    if (buffer_.size() < 4) return std::nullopt;
    const double n = static_cast<double>(buffer_.size());
    const double p1 = (s1_ + c1_) / n;
    const double p2 = (s2_ + c2_) / n;
    const double p3 = (s3_ + c3_) / n;
    const double p4 = (s4_ + c4_) / n;
    // central moments from power sums about the shift
    const double m2 = p2 - p1 * p1;
    if (m2 <= 0.0) return std::nullopt;
    const double m3 = p3 - 3.0 * p1 * p2 + 2.0 * p1 * p1 * p1;
    const double m4 = p4 - 4.0 * p1 * p3 + 6.0 * p1 * p1 * p2 - 3.0 * p1 * p1 * p1 * p1;

    MomentSummary s;
    s.n = buffer_.size();
    s.mean = shift_ + p1;
    s.std_dev = std::sqrt(m2);
    s.skewness = m3 / (m2 * std::sqrt(m2));
    s.kurtosis = m4 / (m2 * m2);
    return s;
}

MomentSummary WindowAccumulator::summary() const {
    if (buffer_.size() < 4) throw std::invalid_argument("window summary requires at least 4 samples");
    auto s = try_summary();
    if (!s) throw std::domain_error("degenerate window: zero variance");
    return *s;
}

std::optional<MomentSummary> try_batch_moments(std::span<const double> samples) {
    if (samples.size() < 4) return std::nullopt;
    for (double v : samples) require_finite(v);

    CompensatedSum mean_sum;
    for (double v : samples) mean_sum.add(v);
    const double n = static_cast<double>(samples.size());
    const double mean = mean_sum.value() / n;

    CompensatedSum s2, s3, s4;
    for (double v : samples) {
        const double d = v - mean;
        const double d2 = d * d;
        s2.add(d2);
        s3.add(d2 * d);
        s4.add(d2 * d2);
    }
    const double m2 = s2.value() / n;
    if (m2 <= 0.0) return std::nullopt;
    const double m3 = s3.value() / n;
    const double m4 = s4.value() / n;

    MomentSummary s;
    s.n = samples.size();
    s.mean = mean;
    s.std_dev = std::sqrt(m2);
    s.skewness = m3 / (m2 * std::sqrt(m2));
    s.kurtosis = m4 / (m2 * m2);
    return s;
}

MomentSummary batch_moments(std::span<const double> samples) {
    if (samples.size() < 4) throw std::invalid_argument("batch moments require at least 4 samples");
    auto s = try_batch_moments(samples);
    if (!s) throw std::domain_error("degenerate sample: zero variance");
    return *s;
}

Trajectory accumulated_trajectory(const HeartSeries& series, std::size_t stride) {
    if (series.samples.empty()) throw std::invalid_argument("empty series");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");

    Trajectory traj;
    MomentAccumulator acc;
    std::size_t count = 0;
    for (const HeartSample& s : series.samples) {
        acc.add(s.hb_ms);
        ++count;
        if (count % stride != 0) continue;
        if (auto sum = acc.try_summary()) {
            traj.points.push_back({s.t, *sum});
        } else {
            traj.skipped_times.push_back(s.t);
        }
    }
    return traj;
}

Trajectory window_trajectory(const HeartSeries& series, std::size_t window, std::size_t stride) {
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (window < 4) throw std::invalid_argument("window must be >= 4");
    if (series.samples.size() < window) {
        throw std::invalid_argument("series shorter than the window");
    }

    Trajectory traj;
    WindowAccumulator acc(window);
    std::size_t pushes = 0;
    for (const HeartSample& s : series.samples) {
        acc.push(s.hb_ms);
        ++pushes;
        if (pushes < window) continue;
        if ((pushes - window) % stride != 0) continue;
        if (auto sum = acc.try_summary()) {
            traj.points.push_back({s.t, *sum});
        } else {
            traj.skipped_times.push_back(s.t);
        }
    }
    return traj;
}

} // namespace hbstat
