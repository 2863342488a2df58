#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ob {

enum class FitMode { robust, least_squares };

/// Median with lower-of-two-middles tie-breaking (deterministic).
double median_lower(std::vector<double> v);

/// Median of |v - center| with the same tie-breaking.
double median_abs_deviation(std::span<const double> v, double center);

double mean(std::span<const double> v);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Repeated-median (Siegel) slope: median over i of the median over j of
/// pairwise slopes. Breakdown point 0.5. Requires >= 2 distinct abscissae.
double siegel_slope(std::span<const double> x, std::span<const double> v);

/// Slope by the requested mode; intercept as median (robust) or mean
/// (least_squares) of v - slope*x.
LineFit fit_line(std::span<const double> x, std::span<const double> v, FitMode mode);

}  // namespace ob
