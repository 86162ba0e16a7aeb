#include "hbstat/pearson.hpp"

#include <cmath>
#include <stdexcept>

namespace hbstat {

namespace {
constexpr PearsonPoint kNormal{0.0, 3.0};
constexpr PearsonPoint kUniform{0.0, 1.8};

double dist(const PearsonPoint& a, const PearsonPoint& b) {
    const double dx = a.beta1 - b.beta1;
    const double dy = a.beta2 - b.beta2;
    return std::sqrt(dx * dx + dy * dy);
}
} // namespace

std::string_view region_name(Region r) {
    switch (r) {
        case Region::infeasible: return "infeasible";
        case Region::near_normal: return "near_normal";
        case Region::near_uniform: return "near_uniform";
        case Region::beta_region: return "beta_region";
        case Region::other: return "other";
    }
    return "?";
}

PearsonPoint to_pearson(const MomentSummary& summary) {
    if (summary.n < 4 || !(summary.std_dev > 0.0)) {
        throw std::domain_error("degenerate summary cannot be mapped to the Pearson plane");
    }
    return {summary.skewness * summary.skewness, summary.kurtosis};
}

double metric1(const PearsonPoint& p) { return dist(p, kNormal); }

double metric2(const PearsonPoint& p) { return dist(p, kUniform); }

bool is_feasible(const PearsonPoint& p) {
    return p.beta2 >= p.beta1 + 1.0 - kFeasibilitySlack;
}

RegionLabel classify_region(const PearsonPoint& p, double tol) {
    if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
    if (!is_feasible(p)) return {Region::infeasible, tol};
    if (dist(p, kNormal) <= tol) return {Region::near_normal, tol};
    if (dist(p, kUniform) <= tol) return {Region::near_uniform, tol};
    // band between the beta lower line and the gamma line, both inclusive
    if (p.beta2 >= p.beta1 + 1.0 - kFeasibilitySlack &&
        p.beta2 <= 3.0 + 1.5 * p.beta1 + kFeasibilitySlack) {
        return {Region::beta_region, tol};
    }
    return {Region::other, tol};
}

std::array<Landmark, 4> landmarks() {
    return {{{"normal", {0.0, 3.0}},
             {"uniform", {0.0, 1.8}},
             {"exponential", {4.0, 9.0}},
             {"logistic", {0.0, 4.2}}}};
}

std::array<BoundaryLine, 2> beta_region_boundaries() {
    return {{{"beta_lower", 1.0, 1.0}, {"gamma_upper", 3.0, 1.5}}};
}

} // namespace hbstat
