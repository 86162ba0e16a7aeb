#pragma once

#include <array>
#include <string_view>

#include "hbstat/moments.hpp"

namespace hbstat {

/// Position on the Pearson plane: x = squared skewness, y = kurtosis.
struct PearsonPoint {
    double beta1 = 0.0; // g1^2
    double beta2 = 0.0; // b2, non-excess
};

// Slack absorbing floating-point error at the feasibility boundary
// beta2 >= beta1 + 1.
inline constexpr double kFeasibilitySlack = 1e-9;

struct Landmark {
    std::string_view name;
    PearsonPoint point;
};

/// Boundary line beta2 = intercept + slope * beta1.
struct BoundaryLine {
    std::string_view name;
    double intercept;
    double slope;
};

enum class Region { infeasible, near_normal, near_uniform, beta_region, other };

struct RegionLabel {
    Region region;
    double tolerance;
};

std::string_view region_name(Region r);

/// Throws std::domain_error on a degenerate summary (n < 4 or zero variance).
PearsonPoint to_pearson(const MomentSummary& summary);

/// Euclidean distance to the normal landmark (0, 3).
double metric1(const PearsonPoint& p);

/// Euclidean distance to the uniform landmark (0, 1.8).
double metric2(const PearsonPoint& p);

/// Label precedence: infeasible > near_normal > near_uniform > beta_region
/// > other. The beta region is beta1 + 1 <= beta2 <= 3 + 1.5*beta1 with
/// both boundaries inclusive.
RegionLabel classify_region(const PearsonPoint& p, double tol = 0.1);

/// Analytic landmarks: normal (0,3), uniform (0,1.8), exponential (4,9),
/// logistic (0,4.2).
std::array<Landmark, 4> landmarks();

/// Lower (beta line) and upper (gamma line) boundaries of the beta region.
std::array<BoundaryLine, 2> beta_region_boundaries();

bool is_feasible(const PearsonPoint& p);

} // namespace hbstat
