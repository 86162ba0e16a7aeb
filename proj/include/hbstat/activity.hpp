#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hbstat {

/// Activity codes used as regression targets.
enum class ActivityType : int { running = 1, skiing = 2, walking = 3 };

std::string_view activity_name(ActivityType a);

/// One exercise with its dynamic and heart-rate summaries.
struct ExerciseRecord {
    ActivityType activity;
    double distance_m;
    double duration_s;
    double hr_rest;       // resting rate before the exercise, bpm
    double hr_min;        // minimal rate during the exercise
    double hr_max;        // maximal rate (MHR)
    double hr_avg;        // average rate (AHR)
    double hr_rest_after; // resting rate measured after the exercise
};

struct DynamicFeatures {
    double pace;     // (duration/60) / (distance/1000), min/km
    double velocity; // distance / (duration/60), m/min
    double metric_d; // pace^2
};

struct HeartDerivedFeatures {
    double working_range; // MHR - minHR
    double reserve;       // MHR - HRrest
    double recovery;      // MHR - HRrest after exercise
};

DynamicFeatures dynamic_features(double distance_m, double duration_s);
HeartDerivedFeatures heart_derived(double hr_rest, double hr_max, double hr_min,
                                   double hr_rest_after);

/// Reads the exercise table: header
/// `activity,distance_m,duration_s,hr_rest,hr_min,hr_max,hr_avg,hr_rest_after`,
/// '#' comments allowed. Validates per-record invariants.
std::vector<ExerciseRecord> parse_exercise_table(std::istream& in);
void write_exercise_table(std::ostream& out, const std::vector<ExerciseRecord>& records);

/// Design matrix for one of the four model feature sets, row-major, plus
/// targets and per-feature standardization parameters from this data.
struct Dataset {
    int model_id = 0;
    std::vector<std::string> feature_names;
    std::vector<double> x; // rows x cols, row-major
    std::vector<double> y; // activity codes as reals
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> feat_mean;
    std::vector<double> feat_std;         // 1.0 substituted for constant columns
    std::vector<std::size_t> constant_columns; // reported, kept

    double at(std::size_t r, std::size_t c) const { return x[r * cols + c]; }
};

/// Feature columns per model id:
///   1: distance, duration
///   2: hr_max, hr_avg
///   3: distance, duration, pace, velocity, metric_d
///   4: model 3 + hr_max, hr_avg
Dataset build_dataset(const std::vector<ExerciseRecord>& records, int model_id);

struct LinearModel {
    int model_id = 0;
    std::vector<std::string> feature_names;
    double intercept = 0.0;
    std::vector<double> coefficients;
    // fit diagnostics
    std::vector<double> fitted;
    std::vector<double> residuals;
    std::vector<double> leverage; // hat-matrix diagonal
    double residual_std_error = 0.0;

    double predict(std::span<const double> features) const;
};

/// Least squares through a Householder QR of [1 X]. Throws on rank
/// deficiency or when rows <= cols + 1.
LinearModel fit_linear(const Dataset& data);

struct ResidualDiagnostics {
    bool degenerate = false; // perfect fit: zero residual variance
    std::vector<double> fitted;
    std::vector<double> standardized; // residual / (s * sqrt(1 - leverage))
    std::vector<double> sqrt_abs_standardized;
};

ResidualDiagnostics residual_diagnostics(const LinearModel& model);

/// Feed-forward network, logistic hidden units, one affine output node.
/// Inputs are z-scored with the stored training-set parameters.
struct MlpModel {
    int model_id = 0;
    std::vector<std::string> feature_names;
    std::vector<std::size_t> layer_sizes;       // input, hidden..., 1
    std::vector<std::vector<double>> weights;   // per layer, out x in row-major
    std::vector<std::vector<double>> biases;    // per layer
    std::vector<double> feat_mean;
    std::vector<double> feat_std;

    std::size_t parameter_count() const;
    double predict(std::span<const double> raw_features) const;
    /// Forward pass on an already-standardized input.
    double forward_standardized(std::span<const double> z) const;
};

/// Hidden layout of the two network families from the model spec.
std::vector<std::size_t> shallow_layers(std::size_t inputs);  // inputs -> 6 -> 1
std::vector<std::size_t> deep_layers(std::size_t inputs);     // inputs -> 12 -> 8 -> 6 -> 3 -> 1

/// Weights uniform in [-0.5, 0.5] from the seeded generator, biases zero.
MlpModel mlp_init(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed);

/// Gradient of the sum-of-squared-errors over the batch with respect to
/// every weight and bias, flattened layer by layer (weights then biases).
std::vector<double> mlp_gradient(const MlpModel& model, const std::vector<std::vector<double>>& z_rows,
                                 std::span<const double> targets);

/// Batch SSE on standardized rows.
double mlp_sse(const MlpModel& model, const std::vector<std::vector<double>>& z_rows,
               std::span<const double> targets);

struct TrainingConfig {
    double initial_step = 0.001;    // initial per-weight RPROP step size
    double grad_threshold = 0.001;  // stop when max |dE/dw| falls below
    std::uint64_t max_epochs = 100000;
    std::uint64_t seed = 0;
    double step_min = 1e-6;
    double step_max = 50.0;
    double eta_plus = 1.2;
    double eta_minus = 0.5;
};

struct TrainResult {
    MlpModel model;
    std::vector<double> error_history; // SSE per epoch, index 0 = before training
    std::uint64_t epochs = 0;
    bool hit_epoch_limit = false;
};

/// Full-batch iRPROP+ training: per-weight steps grow by eta_plus on
/// gradient sign agreement, shrink by eta_minus on a sign flip with the
/// last step retracted when the error rose. Deterministic given the seeded
/// initial weights. Throws std::runtime_error if the error goes
/// non-finite.
TrainResult train_rprop(const MlpModel& init, const Dataset& data, const TrainingConfig& config);

struct EvalReport {
    std::vector<double> predictions;
    std::vector<int> rounded_class; // nearest code in {1,2,3}, clamped
    double sse = 0.0;
    double accuracy = 0.0;
};

EvalReport evaluate(const LinearModel& model, const Dataset& data);
EvalReport evaluate(const MlpModel& model, const Dataset& data);
int round_to_class(double prediction);

/// Model artifact serialization (JSON text). Round-trips bit-exactly.
void save_linear_model(std::ostream& out, const LinearModel& model);
void save_mlp_model(std::ostream& out, const MlpModel& model, const TrainingConfig& config);
struct LoadedModel {
    bool is_linear = false;
    LinearModel linear;
    MlpModel mlp;
};
LoadedModel load_model(std::istream& in);

} // namespace hbstat
