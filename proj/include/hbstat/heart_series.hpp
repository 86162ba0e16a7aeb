#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbstat {

/// One beat: timestamp, RR interval and the derived integer rate.
struct HeartSample {
    double t = 0.0;     // seconds from recording start
    double hb_ms = 0.0; // heartbeat (RR) interval, milliseconds
    int hr_bpm = 0;     // round(60000 / hb_ms)
};

enum class Phase { rest_before, exercise, rest_after };

/// Exercise start/end markers, seconds.
struct PhaseMarks {
    double start_s = 0.0;
    double end_s = 0.0;
};

struct HeartSeries {
    std::vector<HeartSample> samples;
    std::optional<PhaseMarks> marks;
    // true when the input carried only integer bpm values; intervals are
    // then reconstructed and roughly 10x less precise
    bool from_rate_only = false;
};

// Physiological plausibility window for RR intervals (20-240 bpm).
inline constexpr double kMinPlausibleHbMs = 250.0;
inline constexpr double kMaxPlausibleHbMs = 3000.0;

/// Interval -> integer rate, round-half-up. Throws on hb_ms <= 0.
int hb_to_hr(double hb_ms);

/// Rate -> interval. The inverse is exact on integer rates but lossy in
/// general. Throws on hr_bpm <= 0.
double hr_to_hb(int hr_bpm);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ParseOptions {
    char delimiter = ',';
    // drop samples outside the plausibility window instead of keeping them
    bool drop_implausible = false;
};

/// Parses delimiter-separated rows with a mandatory header. Columns: `t_s`
/// (optional) and exactly one of `hb_ms` | `hr_bpm`. Lines starting with
/// '#' are comments. Missing timestamps are synthesized as cumulative
/// interval sums.
HeartSeries parse_recording(std::istream& in, const ParseOptions& opts = {});

/// Writes `t_s,hb_ms` rows at full precision; parse_recording inverts it.
void write_recording(std::ostream& out, const HeartSeries& series);

struct ValidationFinding {
    enum class Kind { interval_out_of_range, duplicate_timestamp, non_monotone_timestamp };
    Kind kind;
    std::size_t index; // sample index
    double value;
};

struct GapStats {
    double min_s = 0.0;
    double max_s = 0.0;
    double mean_s = 0.0;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    GapStats gaps;
    bool ok() const { return findings.empty(); }
};

/// Report-only checks; never mutates the series.
ValidationReport validate_series(const HeartSeries& series);

/// Returns a copy with phase marks set. Throws if markers fall outside the
/// recording span or start >= end.
HeartSeries mark_phases(const HeartSeries& series, double start_s, double end_s);

/// Phase of a timestamp: [first, S) rest_before, [S, E) exercise,
/// [E, last] rest_after. Throws if no marks are set.
Phase phase_of(const HeartSeries& series, double t);

/// Durations {rest_before, exercise, rest_after} in seconds.
std::array<double, 3> phase_durations(const HeartSeries& series);

} // namespace hbstat
