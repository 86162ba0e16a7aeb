#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hbstat {

struct HeartSeries;

/// Finalized statistics of one ensemble. Population (1/n) central moments;
/// kurtosis is the non-excess form (normal -> 3).
struct MomentSummary {
    std::uint64_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0; // g1 = m3 / m2^(3/2)
    double kurtosis = 0.0; // b2 = m4 / m2^2
};

/// A summary stamped with the time of its last contributing sample.
struct TimedSummary {
    double t = 0.0;
    MomentSummary summary;
};

/// Trajectory of summaries plus the times of points that were skipped
/// because the ensemble was degenerate (zero variance) or still below the
/// minimum size of 4.
struct Trajectory {
    std::vector<TimedSummary> points;
    std::vector<double> skipped_times;
};

/// Streaming accumulator for n, mean and central moment sums M2..M4 in
/// one pass. Update recurrences follow Welford/Pebay; combine() uses the
/// pairwise combination rule for partial sums, so partitioned streams can
/// be accumulated in parallel and merged.
class MomentAccumulator {
public:
    void add(double x);

    /// Equivalent to feeding the concatenation of both streams.
    static MomentAccumulator merged(const MomentAccumulator& a, const MomentAccumulator& b);

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double m2_sum() const { return m2_; }
    double m3_sum() const { return m3_; }
    double m4_sum() const { return m4_; }

    /// Summary requires n >= 4 and positive variance.
    bool can_summarize() const { return n_ >= 4 && m2_ > 0.0; }
    std::optional<MomentSummary> try_summary() const;
    MomentSummary summary() const; // throws std::domain_error when degenerate

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

/// Fixed-capacity sliding window over the last w samples. Maintains
/// compensated power sums of (x - shift) and recomputes them from the
/// buffer every few thousand pushes to bound drift; the contract is that
/// summary() always matches batch_moments over the buffer contents.
class WindowAccumulator {
public:
    explicit WindowAccumulator(std::size_t capacity);

    void push(double x);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return buffer_.size(); }
    bool full() const { return buffer_.size() == capacity_; }

    /// Buffer contents in insertion order, oldest first.
    std::vector<double> contents() const;

    bool can_summarize() const;
    std::optional<MomentSummary> try_summary() const;
    MomentSummary summary() const;

private:
    void recompute();

    std::size_t capacity_;
    std::vector<double> buffer_; // ring
    std::size_t head_ = 0;       // index of oldest element once full
    std::uint64_t pushes_since_recompute_ = 0;
    double shift_ = 0.0;
    // Neumaier-compensated running sums of (x-shift)^k, k = 1..4
    double s1_ = 0, s2_ = 0, s3_ = 0, s4_ = 0;
    double c1_ = 0, c2_ = 0, c3_ = 0, c4_ = 0;

    static constexpr std::uint64_t kRecomputeInterval = 4096;
};

/// Two-pass reference computation. Throws std::invalid_argument for
/// n < 4 and std::domain_error for zero variance.
MomentSummary batch_moments(std::span<const double> samples);
std::optional<MomentSummary> try_batch_moments(std::span<const double> samples);

/// Accumulated-ensemble trajectory: one summary every `stride` samples,
/// each covering everything from the start of the series.
Trajectory accumulated_trajectory(const HeartSeries& series, std::size_t stride = 1);

/// Sliding-window trajectory: one summary every `stride` pushes once the
/// window is full. Throws if the series is shorter than the window.
Trajectory window_trajectory(const HeartSeries& series, std::size_t window = 100,
                             std::size_t stride = 1);

} // namespace hbstat
