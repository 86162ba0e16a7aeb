#include "hbstat/heart_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hbstat {

int hb_to_hr(double hb_ms) {
    if (!(hb_ms > 0.0)) throw std::invalid_argument("heartbeat interval must be positive");
    // round-half-up
    return static_cast<int>(std::floor(60000.0 / hb_ms + 0.5));
}

double hr_to_hb(int hr_bpm) {
    if (hr_bpm <= 0) throw std::invalid_argument("heart rate must be positive");
    return 60000.0 / static_cast<double>(hr_bpm);
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line_no) {
    std::string t = trim(field);
    if (t.empty()) throw ParseError(line_no, "empty numeric field");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ParseError(line_no, "malformed number '" + t + "'");
    }
    return v;
}

} // namespace

HeartSeries parse_recording(std::istream& in, const ParseOptions& opts) {
    std::string line;
    std::size_t line_no = 0;

    // header: skip comments and blanks
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        for (auto& h : split(t, opts.delimiter)) header.push_back(trim(h));
        break;
    }
    if (header.empty()) throw ParseError(line_no, "empty input: missing header");

    int t_col = -1, hb_col = -1, hr_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t_s") t_col = static_cast<int>(i);
        else if (header[i] == "hb_ms") hb_col = static_cast<int>(i);
        else if (header[i] == "hr_bpm") hr_col = static_cast<int>(i);
        else throw ParseError(line_no, "unknown column '" + header[i] + "'");
    }
    if (hb_col >= 0 && hr_col >= 0) {
        throw ParseError(line_no, "exactly one of hb_ms or hr_bpm is allowed");
    }
    if (hb_col < 0 && hr_col < 0) {
        throw ParseError(line_no, "missing value column hb_ms or hr_bpm");
    }

    HeartSeries series;
    series.from_rate_only = hr_col >= 0;
    double clock_ms = 0.0; // synthesized per-beat clock when t_s is absent
    double prev_t = -std::numeric_limits<double>::infinity();

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split(t, opts.delimiter);
        if (fields.size() != header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(header.size()) +
                                          " fields, got " + std::to_string(fields.size()));
        }

        HeartSample sample;
        if (hb_col >= 0) {
            sample.hb_ms = parse_number(fields[static_cast<std::size_t>(hb_col)], line_no);
            if (!(sample.hb_ms > 0.0)) throw ParseError(line_no, "non-positive interval");
            sample.hr_bpm = hb_to_hr(sample.hb_ms);
        } else {
            double hr = parse_number(fields[static_cast<std::size_t>(hr_col)], line_no);
            if (!(hr > 0.0) || hr != std::floor(hr)) {
                throw ParseError(line_no, "heart rate must be a positive integer");
            }
            sample.hr_bpm = static_cast<int>(hr);
            sample.hb_ms = hr_to_hb(sample.hr_bpm);
        }

        if (t_col >= 0) {
            sample.t = parse_number(fields[static_cast<std::size_t>(t_col)], line_no);
            if (sample.t < 0.0) throw ParseError(line_no, "negative timestamp");
        } else {
            clock_ms += sample.hb_ms;
            sample.t = clock_ms / 1000.0;
        }
        if (sample.t <= prev_t) throw ParseError(line_no, "non-monotone timestamps");
        prev_t = sample.t;

        if (opts.drop_implausible &&
            (sample.hb_ms < kMinPlausibleHbMs || sample.hb_ms > kMaxPlausibleHbMs)) {
            continue;
        }
        series.samples.push_back(sample);
    }

    if (series.samples.empty()) throw ParseError(line_no, "empty input: no data rows");
    return series;
}

void write_recording(std::ostream& out, const HeartSeries& series) {
    out << "t_s,hb_ms\n";
    char buf[64];
    for (const HeartSample& s : series.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", s.t, s.hb_ms);
        out << buf << '\n';
    }
}

ValidationReport validate_series(const HeartSeries& series) {
    ValidationReport report;
    const auto& samples = series.samples;

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double hb = samples[i].hb_ms;
        if (hb < kMinPlausibleHbMs || hb > kMaxPlausibleHbMs) {
            report.findings.push_back(
                {ValidationFinding::Kind::interval_out_of_range, i, hb});
        }
        if (i > 0) {
            if (samples[i].t == samples[i - 1].t) {
                report.findings.push_back(
                    {ValidationFinding::Kind::duplicate_timestamp, i, samples[i].t});
            } else if (samples[i].t < samples[i - 1].t) {
                report.findings.push_back(
                    {ValidationFinding::Kind::non_monotone_timestamp, i, samples[i].t});
            }
        }
    }

    if (samples.size() >= 2) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        double sum = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            double gap = samples[i].t - samples[i - 1].t;
            mn = std::min(mn, gap);
            mx = std::max(mx, gap);
            sum += gap;
        }
        report.gaps = {mn, mx, sum / static_cast<double>(samples.size() - 1)};
    }
    return report;
}

HeartSeries mark_phases(const HeartSeries& series, double start_s, double end_s) {
    if (series.samples.empty()) throw std::invalid_argument("empty series");
    if (!(start_s < end_s)) throw std::invalid_argument("phase start must precede end");
    const double first = series.samples.front().t;
    const double last = series.samples.back().t;
    if (start_s < first || end_s > last) {
        throw std::invalid_argument("phase markers outside the recording span");
    }
    HeartSeries out = series;
    out.marks = PhaseMarks{start_s, end_s};
    return out;
}

Phase phase_of(const HeartSeries& series, double t) {
    if (!series.marks) throw std::logic_error("series has no phase marks");
    if (t < series.marks->start_s) return Phase::rest_before;
    if (t < series.marks->end_s) return Phase::exercise;
    return Phase::rest_after;
}

std::array<double, 3> phase_durations(const HeartSeries& series) {
    if (!series.marks) throw std::logic_error("series has no phase marks");
    const double first = series.samples.front().t;
    const double last = series.samples.back().t;
    return {series.marks->start_s - first, series.marks->end_s - series.marks->start_s,
            last - series.marks->end_s};
}

} // namespace hbstat
