// hbstat: streaming heartbeat statistics on the Pearson plane, plus
// activity-type models. One binary, subcommands analyze / bootstrap /
// train / predict / synth / landmarks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbstat/activity.hpp"
#include "hbstat/bootstrap.hpp"
#include "hbstat/heart_series.hpp"
#include "hbstat/load_metrics.hpp"
#include "hbstat/moments.hpp"
#include "hbstat/pearson.hpp"
#include "hbstat/synth.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 1729; // fixed default keeps runs reproducible

using json = nlohmann::ordered_json;

std::string g_cmdline;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct OutputOptions {
    std::string format = "csv";
    std::uint64_t seed = kDefaultSeed;
    bool json_mode() const { return format == "json"; }
};

void write_provenance(std::ostream& out, const OutputOptions& opts) {
    out << "# hbstat " << kVersion << "\n# seed " << opts.seed << "\n# cmd " << g_cmdline << '\n';
}

json provenance_json(const OutputOptions& opts) {
    json p;
    p["tool"] = std::string("hbstat ") + kVersion;
    p["seed"] = opts.seed;
    p["cmd"] = g_cmdline;
    return p;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw hbstat::ParseError(0, "cannot open output file '" + path + "'");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hbstat::ParseError(0, "cannot open input file '" + path + "'");
    return in;
}

// ---------------------------------------------------------------------------
// analyze

struct TrajectoryRow {
    double t;
    const hbstat::MomentSummary* s;
    hbstat::PearsonPoint p;
    double m1, m2;
    hbstat::Region region;
};

void write_trajectory_file(const std::string& path, const OutputOptions& opts,
                           const hbstat::Trajectory& traj) {
    std::vector<TrajectoryRow> rows;
    rows.reserve(traj.points.size());
    for (const auto& ts : traj.points) {
        const auto p = hbstat::to_pearson(ts.summary);
        rows.push_back({ts.t, &ts.summary, p, hbstat::metric1(p), hbstat::metric2(p),
                        hbstat::classify_region(p).region});
    }

    auto out = open_out(path);
    if (opts.json_mode()) {
        json doc;
        doc["provenance"] = provenance_json(opts);
        doc["skipped_times"] = traj.skipped_times;
        json records = json::array();
        for (const auto& r : rows) {
            records.push_back({{"t", r.t},
                               {"n", r.s->n},
                               {"mean", r.s->mean},
                               {"std", r.s->std_dev},
                               {"skew", r.s->skewness},
                               {"kurt", r.s->kurtosis},
                               {"beta1", r.p.beta1},
                               {"beta2", r.p.beta2},
                               {"metric1", r.m1},
                               {"metric2", r.m2},
                               {"region", hbstat::region_name(r.region)}});
        }
        doc["records"] = records;
        out << doc.dump(2) << '\n';
        return;
    }

    write_provenance(out, opts);
    for (double t : traj.skipped_times) out << "# degenerate point skipped at t " << fmt(t) << '\n';
    out << "t,n,mean,std,skew,kurt,beta1,beta2,metric1,metric2,region\n";
    for (const auto& r : rows) {
        out << fmt(r.t) << ',' << r.s->n << ',' << fmt(r.s->mean) << ',' << fmt(r.s->std_dev)
            << ',' << fmt(r.s->skewness) << ',' << fmt(r.s->kurtosis) << ',' << fmt(r.p.beta1)
            << ',' << fmt(r.p.beta2) << ',' << fmt(r.m1) << ',' << fmt(r.m2) << ','
            << hbstat::region_name(r.region) << '\n';
    }
}

void write_landmarks_file(const std::string& path, const OutputOptions& opts) {
    auto out = open_out(path);
    const auto marks = hbstat::landmarks();
    const auto bounds = hbstat::beta_region_boundaries();
    if (opts.json_mode()) {
        json doc;
        doc["provenance"] = provenance_json(opts);
        json lm = json::array();
        for (const auto& m : marks) {
            lm.push_back({{"name", std::string(m.name)}, {"beta1", m.point.beta1},
                          {"beta2", m.point.beta2}});
        }
        json bl = json::array();
        for (const auto& b : bounds) {
            bl.push_back({{"name", std::string(b.name)}, {"intercept", b.intercept},
                          {"slope", b.slope}});
        }
        doc["landmarks"] = lm;
        doc["boundaries"] = bl;
        out << doc.dump(2) << '\n';
        return;
    }
    write_provenance(out, opts);
    out << "kind,name,a,b\n";
    for (const auto& m : marks) {
        out << "landmark," << m.name << ',' << fmt(m.point.beta1) << ',' << fmt(m.point.beta2)
            << '\n';
    }
    for (const auto& b : bounds) {
        out << "boundary," << b.name << ',' << fmt(b.intercept) << ',' << fmt(b.slope) << '\n';
    }
}

struct AnalyzeArgs {
    std::string input;
    std::string output = "analysis";
    std::size_t window = 100;
    std::size_t stride = 1;
    double start_s = -1.0, end_s = -1.0;
    std::string marks_file;
    bool drop_implausible = false;
    std::size_t peak_half_width = 25;
    double peak_threshold = 4.0;
    double recovery_delta = 0.1;
    OutputOptions out_opts;
};

int cmd_analyze(const AnalyzeArgs& args) {
    auto in = open_in(args.input);
    hbstat::ParseOptions popts;
    popts.drop_implausible = args.drop_implausible;
    hbstat::HeartSeries series = hbstat::parse_recording(in, popts);

    const auto report = hbstat::validate_series(series);
    for (const auto& f : report.findings) {
        const char* what = f.kind == hbstat::ValidationFinding::Kind::interval_out_of_range
                               ? "interval out of range"
                               : (f.kind == hbstat::ValidationFinding::Kind::duplicate_timestamp
                                      ? "duplicate timestamp"
                                      : "non-monotone timestamp");
        std::cerr << "warning: " << what << " at sample " << f.index << " (" << fmt(f.value)
                  << ")\n";
    }

    std::optional<hbstat::PhaseMarks> marks;
    if (!args.marks_file.empty()) {
        auto min = open_in(args.marks_file);
        double s, e;
        if (!(min >> s >> e)) throw hbstat::ParseError(0, "marks file must hold two numbers");
        marks = hbstat::PhaseMarks{s, e};
    } else if (args.start_s >= 0.0 || args.end_s >= 0.0) {
        if (args.start_s < 0.0 || args.end_s < 0.0) {
            throw std::invalid_argument("--start-s and --end-s must be given together");
        }
        marks = hbstat::PhaseMarks{args.start_s, args.end_s};
    }
    if (marks) series = hbstat::mark_phases(series, marks->start_s, marks->end_s);

    const auto ext = args.out_opts.json_mode() ? ".json" : ".csv";
    const auto accumulated = hbstat::accumulated_trajectory(series, args.stride);
    write_trajectory_file(args.output + ".accumulated" + ext, args.out_opts, accumulated);
    const auto windowed = hbstat::window_trajectory(series, args.window, args.stride);
    write_trajectory_file(args.output + ".window" + ext, args.out_opts, windowed);
    write_landmarks_file(args.output + ".landmarks" + ext, args.out_opts);

    // events from the sliding-window series
    const auto window_metrics = hbstat::metric_series(windowed);
    hbstat::PeakConfig pc;
    pc.baseline_half_width = args.peak_half_width;
    pc.threshold_k = args.peak_threshold;
    std::vector<hbstat::RegimeEvent> events;
    std::string events_note;
    try {
        events = hbstat::detect_regime_changes(window_metrics, pc);
    } catch (const std::invalid_argument& e) {
        events_note = e.what();
    }
    {
        auto out = open_out(args.output + ".events" + ext);
        if (args.out_opts.json_mode()) {
            json doc;
            doc["provenance"] = provenance_json(args.out_opts);
            if (!events_note.empty()) doc["note"] = events_note;
            json recs = json::array();
            for (const auto& ev : events) {
                recs.push_back({{"t", ev.t}, {"magnitude", ev.magnitude}, {"index", ev.index}});
            }
            doc["events"] = recs;
            out << doc.dump(2) << '\n';
        } else {
            write_provenance(out, args.out_opts);
            if (!events_note.empty()) out << "# " << events_note << '\n';
            out << "t,magnitude,index\n";
            for (const auto& ev : events) {
                out << fmt(ev.t) << ',' << fmt(ev.magnitude) << ',' << ev.index << '\n';
            }
        }
    }

    // accommodation/recovery slopes and the recovery delay need phase marks
    if (marks) {
        const auto acc_metrics = hbstat::metric_series(accumulated);
        const double last_t = series.samples.back().t;
        auto out = open_out(args.output + ".slopes" + ext);

        struct Row {
            const char* phase;
            double t0, t1;
        };
        const Row intervals[] = {{"exercise", marks->start_s, marks->end_s},
                                 {"rest_after", marks->end_s, last_t}};
        json jrows = json::array();
        std::ostringstream csv;
        for (const auto& iv : intervals) {
            try {
                const auto est = hbstat::slope(acc_metrics, iv.t0, iv.t1);
                if (args.out_opts.json_mode()) {
                    jrows.push_back({{"phase", iv.phase}, {"t0", est.t0}, {"t1", est.t1},
                                     {"slope", est.slope}, {"intercept", est.intercept},
                                     {"residual_std", est.residual_std},
                                     {"points", est.point_count}});
                } else {
                    csv << iv.phase << ',' << fmt(est.t0) << ',' << fmt(est.t1) << ','
                        << fmt(est.slope) << ',' << fmt(est.intercept) << ','
                        << fmt(est.residual_std) << ',' << est.point_count << '\n';
                }
            } catch (const std::exception& e) {
                if (!args.out_opts.json_mode()) csv << "# " << iv.phase << " skipped: " << e.what() << '\n';
            }
        }

        std::optional<double> delay;
        std::string delay_note;
        try {
            delay = hbstat::recovery_delay(acc_metrics, marks->start_s, marks->end_s,
                                           args.recovery_delta);
        } catch (const std::exception& e) {
            delay_note = e.what();
        }

        if (args.out_opts.json_mode()) {
            json doc;
            doc["provenance"] = provenance_json(args.out_opts);
            doc["slopes"] = jrows;
            if (delay) {
                doc["recovery_delay_s"] = *delay;
            } else {
                doc["recovery_delay_s"] = nullptr;
                if (!delay_note.empty()) doc["recovery_note"] = delay_note;
            }
            out << doc.dump(2) << '\n';
        } else {
            write_provenance(out, args.out_opts);
            out << "phase,t0,t1,slope,intercept,residual_std,points\n" << csv.str();
            if (delay) {
                out << "# recovery_delay_s " << fmt(*delay) << '\n';
            } else {
                out << "# recovery_delay_s none" << (delay_note.empty() ? "" : " (" + delay_note + ")")
                    << '\n';
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bootstrap

struct BootstrapArgs {
    std::string input;
    std::string output = "bootstrap";
    std::uint32_t trials = 1000;
    std::size_t subsample = 0;
    unsigned workers = 1;
    OutputOptions out_opts;
};

int cmd_bootstrap(const BootstrapArgs& args) {
    auto in = open_in(args.input);
    const hbstat::HeartSeries series = hbstat::parse_recording(in);
    std::vector<double> values;
    values.reserve(series.samples.size());
    for (const auto& s : series.samples) values.push_back(s.hb_ms);

    hbstat::BootstrapConfig config;
    config.trials = args.trials;
    config.subsample = args.subsample;
    config.seed = args.out_opts.seed;
    const auto cloud = hbstat::bootstrap_cloud(values, config, args.workers);
    const auto summary = hbstat::cloud_summary(cloud);

    const auto ext = args.out_opts.json_mode() ? ".json" : ".csv";
    {
        auto out = open_out(args.output + ".points" + ext);
        if (args.out_opts.json_mode()) {
            json doc;
            doc["provenance"] = provenance_json(args.out_opts);
            json pts = json::array();
            for (const auto& p : cloud.points) pts.push_back({{"beta1", p.beta1}, {"beta2", p.beta2}});
            doc["points"] = pts;
            out << doc.dump(2) << '\n';
        } else {
            write_provenance(out, args.out_opts);
            out << "beta1,beta2\n";
            for (const auto& p : cloud.points) out << fmt(p.beta1) << ',' << fmt(p.beta2) << '\n';
        }
    }
    {
        auto out = open_out(args.output + ".summary" + ext);
        if (args.out_opts.json_mode()) {
            json doc;
            doc["provenance"] = provenance_json(args.out_opts);
            doc["seed"] = cloud.seed;
            doc["trials"] = args.trials;
            doc["subsample"] = args.subsample == 0 ? values.size() : args.subsample;
            doc["points"] = summary.point_count;
            doc["degenerate"] = summary.degenerate_count;
            doc["centroid"] = {{"beta1", summary.centroid.beta1}, {"beta2", summary.centroid.beta2}};
            doc["std"] = {{"beta1", summary.std_beta1}, {"beta2", summary.std_beta2}};
            doc["quantile_box"] = {{"beta1_lo", summary.beta1_lo}, {"beta1_hi", summary.beta1_hi},
                                   {"beta2_lo", summary.beta2_lo}, {"beta2_hi", summary.beta2_hi}};
            out << doc.dump(2) << '\n';
        } else {
            write_provenance(out, args.out_opts);
            out << "key,value\n";
            out << "seed," << cloud.seed << '\n';
            out << "trials," << args.trials << '\n';
            out << "subsample," << (args.subsample == 0 ? values.size() : args.subsample) << '\n';
            out << "points," << summary.point_count << '\n';
            out << "degenerate," << summary.degenerate_count << '\n';
            out << "centroid_beta1," << fmt(summary.centroid.beta1) << '\n';
            out << "centroid_beta2," << fmt(summary.centroid.beta2) << '\n';
            out << "std_beta1," << fmt(summary.std_beta1) << '\n';
            out << "std_beta2," << fmt(summary.std_beta2) << '\n';
            out << "beta1_lo," << fmt(summary.beta1_lo) << '\n';
            out << "beta1_hi," << fmt(summary.beta1_hi) << '\n';
            out << "beta2_lo," << fmt(summary.beta2_lo) << '\n';
            out << "beta2_hi," << fmt(summary.beta2_hi) << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// train / predict

struct TrainArgs {
    std::string data;
    std::string output = "model.json";
    int model_id = 1;
    std::string learner = "lm";
    std::uint64_t max_epochs = 100000;
    OutputOptions out_opts;
};

int cmd_train(const TrainArgs& args) {
    auto in = open_in(args.data);
    const auto records = hbstat::parse_exercise_table(in);
    const auto dataset = hbstat::build_dataset(records, args.model_id);
    for (std::size_t c : dataset.constant_columns) {
        std::cerr << "warning: feature '" << dataset.feature_names[c] << "' is constant\n";
    }

    auto out = open_out(args.output);
    if (args.learner == "lm") {
        const auto model = hbstat::fit_linear(dataset);
        hbstat::save_linear_model(out, model);
        const auto eval = hbstat::evaluate(model, dataset);
        std::cout << "lm model " << args.model_id << ": sse " << fmt(eval.sse) << ", accuracy "
                  << fmt(eval.accuracy) << '\n';
        return 0;
    }

    hbstat::TrainingConfig config;
    config.seed = args.out_opts.seed;
    config.max_epochs = args.max_epochs;
    const auto layers = args.learner == "nn" ? hbstat::shallow_layers(dataset.cols)
                                             : hbstat::deep_layers(dataset.cols);
    const auto init = hbstat::mlp_init(layers, config.seed);
    const auto result = hbstat::train_rprop(init, dataset, config);
    hbstat::save_mlp_model(out, result.model, config);
    const auto eval = hbstat::evaluate(result.model, dataset);
    std::cout << args.learner << " model " << args.model_id << ": epochs " << result.epochs
              << (result.hit_epoch_limit ? " (epoch limit)" : "") << ", sse " << fmt(eval.sse)
              << ", accuracy " << fmt(eval.accuracy) << '\n';
    return 0;
}

struct PredictArgs {
    std::string data;
    std::string model_file;
    std::string output = "predictions.csv";
    OutputOptions out_opts;
};

int cmd_predict(const PredictArgs& args) {
    auto min = open_in(args.model_file);
    const auto loaded = hbstat::load_model(min);
    const int model_id = loaded.is_linear ? loaded.linear.model_id : loaded.mlp.model_id;

    auto in = open_in(args.data);
    const auto records = hbstat::parse_exercise_table(in);
    const auto dataset = hbstat::build_dataset(records, model_id);
    const std::size_t expected = loaded.is_linear ? loaded.linear.coefficients.size()
                                                  : loaded.mlp.layer_sizes.front();
    if (dataset.cols != expected) {
        throw hbstat::ParseError(0, "dataset feature count does not match the model artifact");
    }

    const auto eval = loaded.is_linear ? hbstat::evaluate(loaded.linear, dataset)
                                       : hbstat::evaluate(loaded.mlp, dataset);

    auto out = open_out(args.output);
    if (args.out_opts.json_mode()) {
        json doc;
        doc["provenance"] = provenance_json(args.out_opts);
        doc["sse"] = eval.sse;
        doc["accuracy"] = eval.accuracy;
        json recs = json::array();
        for (std::size_t i = 0; i < eval.predictions.size(); ++i) {
            recs.push_back({{"index", i},
                            {"target", dataset.y[i]},
                            {"prediction", eval.predictions[i]},
                            {"rounded", eval.rounded_class[i]}});
        }
        doc["records"] = recs;
        out << doc.dump(2) << '\n';
    } else {
        write_provenance(out, args.out_opts);
        out << "# sse " << fmt(eval.sse) << '\n';
        out << "# accuracy " << fmt(eval.accuracy) << '\n';
        out << "index,target,prediction,rounded\n";
        for (std::size_t i = 0; i < eval.predictions.size(); ++i) {
            out << i << ',' << fmt(dataset.y[i]) << ',' << fmt(eval.predictions[i]) << ','
                << eval.rounded_class[i] << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::vector<std::string> segments;
    std::string output = "series.csv";
    OutputOptions out_opts;
};

hbstat::SynthSegment parse_segment(const std::string& text) {
    // beats:mean_ms:std_ms[:trend_ms_per_beat]
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ':')) {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (field.empty() || end != field.c_str() + field.size()) {
            throw hbstat::ParseError(0, "malformed segment '" + text + "'");
        }
        parts.push_back(v);
    }
    if (parts.size() < 3 || parts.size() > 4) {
        throw hbstat::ParseError(0, "segment must be beats:mean:std[:trend]");
    }
    hbstat::SynthSegment seg;
    seg.beats = static_cast<std::size_t>(parts[0]);
    seg.mean_ms = parts[1];
    seg.std_ms = parts[2];
    seg.trend_ms_per_beat = parts.size() == 4 ? parts[3] : 0.0;
    return seg;
}

int cmd_synth(const SynthArgs& args) {
    hbstat::SynthSpec spec;
    spec.seed = args.out_opts.seed;
    for (const auto& s : args.segments) spec.segments.push_back(parse_segment(s));
    const auto series = hbstat::synth_series(spec);

    auto out = open_out(args.output);
    write_provenance(out, args.out_opts);
    hbstat::write_recording(out, series);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    g_cmdline = cmd.str();

    CLI::App app{"heartbeat time-series statistics on the Pearson plane"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "trajectories, metrics, events and slopes");
    analyze->add_option("--input", an.input, "heartbeat recording (csv)")->required();
    analyze->add_option("--output", an.output, "output path prefix");
    analyze->add_option("--window", an.window, "sliding window length in samples");
    analyze->add_option("--stride", an.stride, "summary emission stride");
    analyze->add_option("--start-s", an.start_s, "exercise start marker, seconds");
    analyze->add_option("--end-s", an.end_s, "exercise end marker, seconds");
    analyze->add_option("--marks", an.marks_file, "sidecar file with start and end seconds");
    analyze->add_flag("--drop-implausible", an.drop_implausible,
                      "drop samples outside 250..3000 ms");
    analyze->add_option("--peak-half-width", an.peak_half_width, "peak baseline half-width");
    analyze->add_option("--peak-threshold", an.peak_threshold, "peak MAD multiplier");
    analyze->add_option("--delta", an.recovery_delta, "recovery tolerance on metric1");
    analyze->add_option("--format", an.out_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    analyze->add_option("--seed", an.out_opts.seed, "seed echoed in outputs");

    BootstrapArgs bs;
    auto* boot = app.add_subcommand("bootstrap", "resampling cloud on the Pearson plane");
    boot->add_option("--input", bs.input, "heartbeat recording (csv)")->required();
    boot->add_option("--output", bs.output, "output path prefix");
    boot->add_option("--trials", bs.trials, "number of bootstrap trials");
    boot->add_option("--subsample", bs.subsample, "resample size (default: input size)");
    boot->add_option("--workers", bs.workers, "worker thread hint");
    boot->add_option("--format", bs.out_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    boot->add_option("--seed", bs.out_opts.seed, "resampling seed");

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "fit an activity-type model");
    train->add_option("--data", tr.data, "exercise table (csv)")->required();
    train->add_option("--output", tr.output, "model artifact path");
    train->add_option("--model", tr.model_id, "feature set id 1..4")->check(CLI::Range(1, 4));
    train->add_option("--learner", tr.learner, "lm, nn or dl")
        ->check(CLI::IsMember({"lm", "nn", "dl"}));
    train->add_option("--max-epochs", tr.max_epochs, "training epoch limit");
    train->add_option("--seed", tr.out_opts.seed, "weight initialization seed");

    PredictArgs pr;
    auto* predict = app.add_subcommand("predict", "apply a trained model artifact");
    predict->add_option("--data", pr.data, "exercise table (csv)")->required();
    predict->add_option("--model-file", pr.model_file, "model artifact path")->required();
    predict->add_option("--output", pr.output, "prediction report path");
    predict->add_option("--format", pr.out_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    predict->add_option("--seed", pr.out_opts.seed, "seed echoed in outputs");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "generate a synthetic heartbeat recording");
    synth->add_option("--segment", sy.segments, "beats:mean_ms:std_ms[:trend], repeatable")
        ->required();
    synth->add_option("--output", sy.output, "recording output path");
    synth->add_option("--seed", sy.out_opts.seed, "generator seed");

    std::string lm_output = "landmarks.csv";
    OutputOptions lm_opts;
    auto* lmc = app.add_subcommand("landmarks", "emit Pearson-plane landmarks and boundaries");
    lmc->add_option("--output", lm_output, "output path");
    lmc->add_option("--format", lm_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    lmc->add_option("--seed", lm_opts.seed, "seed echoed in outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(an);
        if (*boot) return cmd_bootstrap(bs);
        if (*train) return cmd_train(tr);
        if (*predict) return cmd_predict(pr);
        if (*synth) return cmd_synth(sy);
        if (*lmc) {
            write_landmarks_file(lm_output, lm_opts);
            return 0;
        }
    } catch (const hbstat::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "degenerate: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
