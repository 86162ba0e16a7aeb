#include "hbstat/activity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hbstat/heart_series.hpp" // ParseError
#include "hbstat/rng.hpp"

namespace hbstat {

using json = nlohmann::ordered_json;

std::string_view activity_name(ActivityType a) {
    switch (a) {
        case ActivityType::running: return "running";
        case ActivityType::skiing: return "skiing";
        case ActivityType::walking: return "walking";
    }
    return "?";
}

DynamicFeatures dynamic_features(double distance_m, double duration_s) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("distance must be positive");
    if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
    DynamicFeatures f;
    f.pace = (duration_s / 60.0) / (distance_m / 1000.0);
    f.velocity = distance_m / (duration_s / 60.0);
    f.metric_d = f.pace * f.pace;
    return f;
}

HeartDerivedFeatures heart_derived(double hr_rest, double hr_max, double hr_min,
                                   double hr_rest_after) {
    if (!(hr_rest > 0.0) || !(hr_max > 0.0) || !(hr_min > 0.0) || !(hr_rest_after > 0.0)) {
        throw std::invalid_argument("heart rates must be positive");
    }
    if (hr_min > hr_max) throw std::invalid_argument("minimal rate exceeds maximal rate");
    return {hr_max - hr_min, hr_max - hr_rest, hr_max - hr_rest_after};
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& field, std::size_t line_no) {
    std::string t = trim(field);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ParseError(line_no, "malformed number '" + t + "'");
    }
    return v;
}

constexpr const char* kExerciseHeader =
    "activity,distance_m,duration_s,hr_rest,hr_min,hr_max,hr_avg,hr_rest_after";

void validate_record(const ExerciseRecord& r, std::size_t line_no) {
    auto fail = [&](const std::string& msg) { throw ParseError(line_no, msg); };
    const int code = static_cast<int>(r.activity);
    if (code < 1 || code > 3) fail("activity code must be 1, 2 or 3");
    if (!(r.distance_m > 0.0)) fail("distance must be positive");
    if (!(r.duration_s > 0.0)) fail("duration must be positive");
    if (!(r.hr_rest > 0.0) || !(r.hr_min > 0.0) || !(r.hr_max > 0.0) || !(r.hr_avg > 0.0) ||
        !(r.hr_rest_after > 0.0)) {
        fail("heart rates must be positive");
    }
    if (!(r.hr_min <= r.hr_avg && r.hr_avg <= r.hr_max)) {
        fail("expected hr_min <= hr_avg <= hr_max");
    }
}

} // namespace

std::vector<ExerciseRecord> parse_exercise_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    std::string header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = t;
        break;
    }
    if (header != kExerciseHeader) {
        throw ParseError(line_no, std::string("expected header '") + kExerciseHeader + "'");
    }

    std::vector<ExerciseRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv(t);
        if (fields.size() != 8) {
            throw ParseError(line_no, "expected 8 fields, got " + std::to_string(fields.size()));
        }
        ExerciseRecord r;
        const double code = to_number(fields[0], line_no);
        if (code != std::floor(code)) throw ParseError(line_no, "activity code must be integer");
        r.activity = static_cast<ActivityType>(static_cast<int>(code));
        r.distance_m = to_number(fields[1], line_no);
        r.duration_s = to_number(fields[2], line_no);
        r.hr_rest = to_number(fields[3], line_no);
        r.hr_min = to_number(fields[4], line_no);
        r.hr_max = to_number(fields[5], line_no);
        r.hr_avg = to_number(fields[6], line_no);
        r.hr_rest_after = to_number(fields[7], line_no);
        validate_record(r, line_no);
        records.push_back(r);
    }
    if (records.empty()) throw ParseError(line_no, "empty exercise table");
    return records;
}

void write_exercise_table(std::ostream& out, const std::vector<ExerciseRecord>& records) {
    out << kExerciseHeader << '\n';
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                      static_cast<int>(r.activity), r.distance_m, r.duration_s, r.hr_rest,
                      r.hr_min, r.hr_max, r.hr_avg, r.hr_rest_after);
        out << buf << '\n';
    }
}

Dataset build_dataset(const std::vector<ExerciseRecord>& records, int model_id) {
    if (model_id < 1 || model_id > 4) throw std::invalid_argument("model id must be 1..4");
    if (records.size() < 2) throw std::invalid_argument("need at least 2 records");

    Dataset d;
    d.model_id = model_id;
    switch (model_id) {
        case 1: d.feature_names = {"distance", "duration"}; break;
        case 2: d.feature_names = {"hr_max", "hr_avg"}; break;
        case 3: d.feature_names = {"distance", "duration", "pace", "velocity", "metric_d"}; break;
        case 4:
            d.feature_names = {"distance", "duration", "pace",
                               "velocity", "metric_d", "hr_max", "hr_avg"};
            break;
    }
    d.rows = records.size();
    d.cols = d.feature_names.size();
    d.x.reserve(d.rows * d.cols);
    d.y.reserve(d.rows);

    for (const auto& r : records) {
        const DynamicFeatures f = dynamic_features(r.distance_m, r.duration_s);
        switch (model_id) {
            case 1:
                d.x.insert(d.x.end(), {r.distance_m, r.duration_s});
                break;
            case 2:
                d.x.insert(d.x.end(), {r.hr_max, r.hr_avg});
                break;
            case 3:
                d.x.insert(d.x.end(), {r.distance_m, r.duration_s, f.pace, f.velocity, f.metric_d});
                break;
            case 4:
                d.x.insert(d.x.end(), {r.distance_m, r.duration_s, f.pace, f.velocity, f.metric_d,
                                       r.hr_max, r.hr_avg});
                break;
        }
        d.y.push_back(static_cast<double>(static_cast<int>(r.activity)));
    }

    d.feat_mean.assign(d.cols, 0.0);
    d.feat_std.assign(d.cols, 0.0);
    for (std::size_t c = 0; c < d.cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < d.rows; ++r) sum += d.at(r, c);
        d.feat_mean[c] = sum / static_cast<double>(d.rows);
        double ss = 0.0;
        for (std::size_t r = 0; r < d.rows; ++r) {
            const double dv = d.at(r, c) - d.feat_mean[c];
            ss += dv * dv;
        }
        d.feat_std[c] = std::sqrt(ss / static_cast<double>(d.rows));
        if (d.feat_std[c] == 0.0) {
            d.constant_columns.push_back(c);
            d.feat_std[c] = 1.0;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// linear regression

namespace {

// Householder QR of the n x p design (intercept column first). Returns
// false when a pivot collapses, i.e. the design is rank deficient.
struct QrResult {
    std::size_t n = 0, p = 0;
    std::vector<double> r;     // p x p upper triangle, row-major
    std::vector<double> qty;   // Q^T y, length n
    std::vector<double> thin_q; // n x p, for leverages
};

bool householder_qr(std::vector<double> a, std::vector<double> y, std::size_t n, std::size_t p,
                    QrResult& out) {
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * p + j]; };
    std::vector<std::vector<double>> reflectors;
    reflectors.reserve(p);

    double max_col_norm = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += A(i, j) * A(i, j);
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    const double tol = 1e-12 * std::max(max_col_norm, 1.0);

    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += A(i, k) * A(i, k);
        norm = std::sqrt(norm);
        if (norm <= tol) return false;

        const double alpha = A(k, k) > 0.0 ? -norm : norm;
        std::vector<double> v(n - k, 0.0);
        v[0] = A(k, k) - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = A(i, k);
        double vtv = 0.0;
        for (double w : v) vtv += w * w;
        if (vtv <= 0.0) return false;

        for (std::size_t j = k; j < p; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * A(i, j);
            const double c = 2.0 * dot / vtv;
            for (std::size_t i = k; i < n; ++i) A(i, j) -= c * v[i - k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * y[i];
        const double c = 2.0 * dot / vtv;
        for (std::size_t i = k; i < n; ++i) y[i] -= c * v[i - k];

        reflectors.push_back(std::move(v));
    }

    out.n = n;
    out.p = p;
    out.r.assign(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) out.r[i * p + j] = A(i, j);
        if (std::abs(out.r[i * p + i]) <= tol) return false;
    }
    out.qty = std::move(y);

    // thin Q = H_0 ... H_{p-1} applied to the first p identity columns
    out.thin_q.assign(n * p, 0.0);
    for (std::size_t j = 0; j < p; ++j) out.thin_q[j * p + j] = 1.0;
    for (std::size_t k = p; k-- > 0;) {
        const auto& v = reflectors[k];
        double vtv = 0.0;
        for (double w : v) vtv += w * w;
        for (std::size_t j = 0; j < p; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * out.thin_q[i * p + j];
            const double c = 2.0 * dot / vtv;
            for (std::size_t i = k; i < n; ++i) out.thin_q[i * p + j] -= c * v[i - k];
        }
    }
    return true;
}

} // namespace

double LinearModel::predict(std::span<const double> features) const {
    if (features.size() != coefficients.size()) {
        throw std::invalid_argument("feature count does not match the model");
    }
    double v = intercept;
    for (std::size_t i = 0; i < features.size(); ++i) v += coefficients[i] * features[i];
    return v;
}

LinearModel fit_linear(const Dataset& data) {
    const std::size_t n = data.rows;
    const std::size_t p = data.cols + 1; // intercept
    if (n <= p) throw std::invalid_argument("too few rows for the number of features");

    std::vector<double> design(n * p);
    for (std::size_t i = 0; i < n; ++i) {
        design[i * p] = 1.0;
        for (std::size_t j = 0; j < data.cols; ++j) design[i * p + 1 + j] = data.at(i, j);
    }

    QrResult qr;
    if (!householder_qr(design, data.y, n, p, qr)) {
        throw std::domain_error("rank-deficient design matrix");
    }

    // back-substitution of R beta = (Q^T y)[0..p)
    std::vector<double> beta(p, 0.0);
    for (std::size_t i = p; i-- > 0;) {
        double v = qr.qty[i];
        for (std::size_t j = i + 1; j < p; ++j) v -= qr.r[i * p + j] * beta[j];
        beta[i] = v / qr.r[i * p + i];
    }

    LinearModel model;
    model.model_id = data.model_id;
    model.feature_names = data.feature_names;
    model.intercept = beta[0];
    model.coefficients.assign(beta.begin() + 1, beta.end());

    model.fitted.resize(n);
    model.residuals.resize(n);
    model.leverage.resize(n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = model.intercept;
        for (std::size_t j = 0; j < data.cols; ++j) f += model.coefficients[j] * data.at(i, j);
        model.fitted[i] = f;
        model.residuals[i] = data.y[i] - f;
        rss += model.residuals[i] * model.residuals[i];
        double h = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double q = qr.thin_q[i * p + j];
            h += q * q;
        }
        model.leverage[i] = h;
    }
    model.residual_std_error = std::sqrt(rss / static_cast<double>(n - p));
    return model;
}

ResidualDiagnostics residual_diagnostics(const LinearModel& model) {
    if (model.fitted.empty()) throw std::invalid_argument("model carries no fit diagnostics");

    ResidualDiagnostics d;
    d.fitted = model.fitted;

    double rss = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < model.residuals.size(); ++i) {
        rss += model.residuals[i] * model.residuals[i];
        yy += model.fitted[i] * model.fitted[i];
    }
    if (rss <= 1e-20 * std::max(1.0, yy)) {
        d.degenerate = true; // perfect fit: standardization undefined
        return d;
    }

    const double s = model.residual_std_error;
    d.standardized.resize(model.residuals.size());
    d.sqrt_abs_standardized.resize(model.residuals.size());
    for (std::size_t i = 0; i < model.residuals.size(); ++i) {
        const double lev = std::min(model.leverage[i], 1.0 - 1e-12);
        d.standardized[i] = model.residuals[i] / (s * std::sqrt(1.0 - lev));
        d.sqrt_abs_standardized[i] = std::sqrt(std::abs(d.standardized[i]));
    }
    return d;
}

// ---------------------------------------------------------------------------
// neural networks

std::vector<std::size_t> shallow_layers(std::size_t inputs) { return {inputs, 6, 1}; }

std::vector<std::size_t> deep_layers(std::size_t inputs) { return {inputs, 12, 8, 6, 3, 1}; }

std::size_t MlpModel::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        count += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
    }
    return count;
}

MlpModel mlp_init(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw std::invalid_argument("network needs at least two layers");
    for (std::size_t s : layer_sizes) {
        if (s == 0) throw std::invalid_argument("layer sizes must be positive");
    }
    if (layer_sizes.back() != 1) throw std::invalid_argument("exactly one output node expected");

    MlpModel m;
    m.layer_sizes = layer_sizes;
    SplitMix64 rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const std::size_t in = layer_sizes[l];
        const std::size_t out = layer_sizes[l + 1];
        std::vector<double> w(in * out);
        for (double& v : w) v = rng.next_double() - 0.5;
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(out, 0.0);
    }
    m.feat_mean.assign(layer_sizes.front(), 0.0);
    m.feat_std.assign(layer_sizes.front(), 1.0);
    return m;
}

namespace {
inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
} // namespace

double MlpModel::forward_standardized(std::span<const double> z) const {
    if (z.size() != layer_sizes.front()) throw std::invalid_argument("input dimension mismatch");

    std::vector<double> act(z.begin(), z.end());
    std::vector<double> next;
    const std::size_t layers = weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in = layer_sizes[l];
        const std::size_t out = layer_sizes[l + 1];
        next.assign(out, 0.0);
        for (std::size_t o = 0; o < out; ++o) {
            double z_o = biases[l][o];
            const double* row = weights[l].data() + o * in;
            for (std::size_t i = 0; i < in; ++i) z_o += row[i] * act[i];
            next[o] = (l + 1 == layers) ? z_o : logistic(z_o); // output node is affine
        }
        act.swap(next);
    }
    return act[0];
}

double MlpModel::predict(std::span<const double> raw_features) const {
    if (raw_features.size() != layer_sizes.front()) {
        throw std::invalid_argument("input dimension mismatch");
    }
    std::vector<double> z(raw_features.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = (raw_features[i] - feat_mean[i]) / feat_std[i];
    }
    return forward_standardized(z);
}

namespace {

// activations per layer for one sample; index 0 is the input itself
std::vector<std::vector<double>> forward_trace(const MlpModel& m, std::span<const double> z) {
    std::vector<std::vector<double>> acts;
    acts.emplace_back(z.begin(), z.end());
    const std::size_t layers = m.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in = m.layer_sizes[l];
        const std::size_t out = m.layer_sizes[l + 1];
        std::vector<double> a(out, 0.0);
        for (std::size_t o = 0; o < out; ++o) {
            double z_o = m.biases[l][o];
            const double* row = m.weights[l].data() + o * in;
            for (std::size_t i = 0; i < in; ++i) z_o += row[i] * acts[l][i];
            a[o] = (l + 1 == layers) ? z_o : logistic(z_o);
        }
        acts.push_back(std::move(a));
    }
    return acts;
}

} // namespace

double mlp_sse(const MlpModel& model, const std::vector<std::vector<double>>& z_rows,
               std::span<const double> targets) {
    double sse = 0.0;
    for (std::size_t r = 0; r < z_rows.size(); ++r) {
        const double e = model.forward_standardized(z_rows[r]) - targets[r];
        sse += e * e;
    }
    return sse;
}

std::vector<double> mlp_gradient(const MlpModel& model,
                                 const std::vector<std::vector<double>>& z_rows,
                                 std::span<const double> targets) {
    if (z_rows.empty()) throw std::invalid_argument("empty batch");
    const std::size_t layers = model.weights.size();

    std::vector<std::vector<double>> grad_w(layers), grad_b(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        grad_w[l].assign(model.weights[l].size(), 0.0);
        grad_b[l].assign(model.biases[l].size(), 0.0);
    }

    for (std::size_t r = 0; r < z_rows.size(); ++r) {
        const auto acts = forward_trace(model, z_rows[r]);
        // dE/dy for E = sum (y_hat - y)^2
        std::vector<double> delta{2.0 * (acts.back()[0] - targets[r])};
        for (std::size_t l = layers; l-- > 0;) {
            const std::size_t in = model.layer_sizes[l];
            const std::size_t out = model.layer_sizes[l + 1];
            for (std::size_t o = 0; o < out; ++o) {
                grad_b[l][o] += delta[o];
                double* gw = grad_w[l].data() + o * in;
                const double d = delta[o];
                for (std::size_t i = 0; i < in; ++i) gw[i] += d * acts[l][i];
            }
            if (l == 0) break;
            std::vector<double> prev(in, 0.0);
            for (std::size_t i = 0; i < in; ++i) {
                double back = 0.0;
                for (std::size_t o = 0; o < out; ++o) back += model.weights[l][o * in + i] * delta[o];
                const double a = acts[l][i];
                prev[i] = back * a * (1.0 - a); // logistic derivative
            }
            delta.swap(prev);
        }
    }

    std::vector<double> flat;
    flat.reserve(model.parameter_count());
    for (std::size_t l = 0; l < layers; ++l) {
        flat.insert(flat.end(), grad_w[l].begin(), grad_w[l].end());
        flat.insert(flat.end(), grad_b[l].begin(), grad_b[l].end());
    }
    return flat;
}

namespace {

std::vector<double> flatten_params(const MlpModel& m) {
    std::vector<double> flat;
    flat.reserve(m.parameter_count());
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        flat.insert(flat.end(), m.weights[l].begin(), m.weights[l].end());
        flat.insert(flat.end(), m.biases[l].begin(), m.biases[l].end());
    }
    return flat;
}

void unflatten_params(MlpModel& m, const std::vector<double>& flat) {
    std::size_t pos = 0;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), m.weights[l].size(),
                    m.weights[l].begin());
        pos += m.weights[l].size();
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), m.biases[l].size(),
                    m.biases[l].begin());
        pos += m.biases[l].size();
    }
}

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

} // namespace

TrainResult train_rprop(const MlpModel& init, const Dataset& data, const TrainingConfig& config) {
    if (init.layer_sizes.front() != data.cols) {
        throw std::invalid_argument("network input size does not match the dataset");
    }
    if (data.rows == 0) throw std::invalid_argument("empty dataset");

    TrainResult result;
    result.model = init;
    result.model.model_id = data.model_id;
    result.model.feature_names = data.feature_names;
    result.model.feat_mean = data.feat_mean;
    result.model.feat_std = data.feat_std;

    std::vector<std::vector<double>> z_rows(data.rows, std::vector<double>(data.cols));
    for (std::size_t r = 0; r < data.rows; ++r) {
        for (std::size_t c = 0; c < data.cols; ++c) {
            z_rows[r][c] = (data.at(r, c) - data.feat_mean[c]) / data.feat_std[c];
        }
    }

    std::vector<double> params = flatten_params(result.model);
    const std::size_t np = params.size();
    std::vector<double> step(np, config.initial_step);
    std::vector<double> prev_grad(np, 0.0);
    std::vector<double> prev_update(np, 0.0);
    double prev_error = std::numeric_limits<double>::infinity();

    for (std::uint64_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        unflatten_params(result.model, params);
        const double error = mlp_sse(result.model, z_rows, data.y);
        if (!std::isfinite(error)) {
            throw std::runtime_error("training error became non-finite at epoch " +
                                     std::to_string(epoch));
        }
        result.error_history.push_back(error);
        const std::vector<double> grad = mlp_gradient(result.model, z_rows, data.y);

        double max_abs = 0.0;
        for (double g : grad) max_abs = std::max(max_abs, std::abs(g));
        if (max_abs < config.grad_threshold) {
            result.epochs = epoch;
            return result;
        }

        // iRPROP+: adapt per-weight steps by gradient sign agreement and
        // retract a step that both flipped sign and raised the error
        for (std::size_t i = 0; i < np; ++i) {
            const double s = prev_grad[i] * grad[i];
            if (s > 0.0) {
                step[i] = std::min(step[i] * config.eta_plus, config.step_max);
                const double update = -sign(grad[i]) * step[i];
                params[i] += update;
                prev_update[i] = update;
                prev_grad[i] = grad[i];
            } else if (s < 0.0) {
                step[i] = std::max(step[i] * config.eta_minus, config.step_min);
                if (error > prev_error) params[i] -= prev_update[i];
                prev_update[i] = 0.0;
                prev_grad[i] = 0.0;
            } else {
                const double update = -sign(grad[i]) * step[i];
                params[i] += update;
                prev_update[i] = update;
                prev_grad[i] = grad[i];
            }
        }
        prev_error = error;
        result.epochs = epoch + 1;
    }

    unflatten_params(result.model, params);
    result.error_history.push_back(mlp_sse(result.model, z_rows, data.y));
    result.hit_epoch_limit = true;
    return result;
}

int round_to_class(double prediction) {
    const long long r = std::llround(prediction);
    return static_cast<int>(std::clamp<long long>(r, 1, 3));
}

namespace {

EvalReport evaluate_predictions(std::vector<double> predictions, const Dataset& data) {
    EvalReport rep;
    rep.predictions = std::move(predictions);
    rep.rounded_class.reserve(data.rows);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < data.rows; ++r) {
        const double e = rep.predictions[r] - data.y[r];
        rep.sse += e * e;
        const int cls = round_to_class(rep.predictions[r]);
        rep.rounded_class.push_back(cls);
        if (cls == static_cast<int>(data.y[r])) ++correct;
    }
    rep.accuracy = data.rows == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(data.rows);
    return rep;
}

} // namespace

EvalReport evaluate(const LinearModel& model, const Dataset& data) {
    std::vector<double> preds(data.rows);
    std::vector<double> row(data.cols);
    for (std::size_t r = 0; r < data.rows; ++r) {
        for (std::size_t c = 0; c < data.cols; ++c) row[c] = data.at(r, c);
        preds[r] = model.predict(row);
    }
    return evaluate_predictions(std::move(preds), data);
}

EvalReport evaluate(const MlpModel& model, const Dataset& data) {
    std::vector<double> preds(data.rows);
    std::vector<double> row(data.cols);
    for (std::size_t r = 0; r < data.rows; ++r) {
        for (std::size_t c = 0; c < data.cols; ++c) row[c] = data.at(r, c);
        preds[r] = model.predict(row);
    }
    return evaluate_predictions(std::move(preds), data);
}

// ---------------------------------------------------------------------------
// artifacts

void save_linear_model(std::ostream& out, const LinearModel& model) {
    json j;
    j["kind"] = "lm";
    j["model_id"] = model.model_id;
    j["feature_names"] = model.feature_names;
    j["intercept"] = model.intercept;
    j["coefficients"] = model.coefficients;
    j["residual_std_error"] = model.residual_std_error;
    out << j.dump(2) << '\n';
}

void save_mlp_model(std::ostream& out, const MlpModel& model, const TrainingConfig& config) {
    json j;
    j["kind"] = model.layer_sizes.size() == 3 ? "nn" : "dl";
    j["model_id"] = model.model_id;
    j["feature_names"] = model.feature_names;
    j["layer_sizes"] = model.layer_sizes;
    j["weights"] = model.weights;
    j["biases"] = model.biases;
    j["feat_mean"] = model.feat_mean;
    j["feat_std"] = model.feat_std;
    j["config"] = {{"initial_step", config.initial_step},
                   {"grad_threshold", config.grad_threshold},
                   {"max_epochs", config.max_epochs},
                   {"seed", config.seed},
                   {"step_min", config.step_min},
                   {"step_max", config.step_max},
                   {"eta_plus", config.eta_plus},
                   {"eta_minus", config.eta_minus}};
    out << j.dump(2) << '\n';
}

LoadedModel load_model(std::istream& in) {
    json j = json::parse(in);
    LoadedModel loaded;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lm") {
        loaded.is_linear = true;
        loaded.linear.model_id = j.at("model_id").get<int>();
        loaded.linear.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        loaded.linear.intercept = j.at("intercept").get<double>();
        loaded.linear.coefficients = j.at("coefficients").get<std::vector<double>>();
        loaded.linear.residual_std_error = j.at("residual_std_error").get<double>();
    } else if (kind == "nn" || kind == "dl") {
        loaded.mlp.model_id = j.at("model_id").get<int>();
        loaded.mlp.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        loaded.mlp.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
        loaded.mlp.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        loaded.mlp.biases = j.at("biases").get<std::vector<std::vector<double>>>();
        loaded.mlp.feat_mean = j.at("feat_mean").get<std::vector<double>>();
        loaded.mlp.feat_std = j.at("feat_std").get<std::vector<double>>();
    } else {
        throw std::runtime_error("unknown model kind '" + kind + "'");
    }
    return loaded;
}

} // namespace hbstat
