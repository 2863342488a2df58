#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ob/errors.hpp"

namespace ob {

/// A real function tabulated on a strictly increasing positive grid,
/// with a per-point validity flag (0 = unusable, 1 = usable).
struct GridFunction {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;

    std::size_t size() const { return grid.size(); }
    bool is_valid(std::size_t i) const { return valid[i] != 0; }
    std::size_t count_valid() const;

    /// Throws validation_error unless the grid is strictly increasing,
    /// positive, and all three arrays have equal length.
    void validate() const;
};

/// All-valid tabulation of `fn` on `grid`.
template <class Fn>
GridFunction tabulate_on(const std::vector<double>& grid, Fn&& fn) {
    GridFunction g;
    g.grid = grid;
    g.values.reserve(grid.size());
    for (double x : grid) g.values.push_back(fn(x));
    g.valid.assign(grid.size(), 1);
    return g;
}

/// x0 * ratio^k for k = 0..count-1. Requires x0 > 0 and ratio > 1.
std::vector<double> geometric_grid(double x0, double ratio, std::size_t count);

/// start + k*step for k = 0..count-1. Requires start > 0 and step > 0.
std::vector<double> arithmetic_grid(double start, double step, std::size_t count);

/// Defaults used by the recovery pipeline: x0 = 1e-2, ratio = 2^(1/8), 129 points.
struct GeometricGridSpec {
    double x0 = 1e-2;
    double ratio = 1.0905077326652577;  // 2^(1/8)
    std::size_t count = 129;

    std::vector<double> build() const { return geometric_grid(x0, ratio, count); }
};

/// Common ratio if the grid is geometric (consecutive ratios equal within
/// rel_tol), otherwise nullopt. Needs at least 2 points.
std::optional<double> geometric_ratio(const std::vector<double>& grid, double rel_tol = 1e-9);

/// Integer m with r == ratio^m for the grid's common ratio; throws
/// validation_error when the grid is not geometric or r is off the step set.
int ratio_to_shift(const std::vector<double>& grid, double r, double rel_tol = 1e-9);

/// Index of the grid point equal to x within rel_tol, or nullopt.
std::optional<std::size_t> find_grid_index(const std::vector<double>& grid, double x,
                                           double rel_tol = 1e-9);

/// Lower-middle empirical quantile of a sample, p in [0,1].
double sample_quantile(std::vector<double> sorted_or_not, double p);

}  // namespace ob
