#include "ob/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ob {

std::size_t GridFunction::count_valid() const {
    std::size_t n = 0;
    for (auto f : valid) n += (f != 0);
    return n;
}

void GridFunction::validate() const {
    if (grid.size() != values.size() || grid.size() != valid.size())
        throw validation_error("grid function: array lengths differ");
    if (grid.empty()) throw validation_error("grid function: empty grid");
    if (grid.front() <= 0.0) throw validation_error("grid function: grid must be positive");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw validation_error("grid function: grid must be strictly increasing");
}

std::vector<double> geometric_grid(double x0, double ratio, std::size_t count) {
    if (!(x0 > 0.0)) throw validation_error("geometric grid: x0 must be positive");
    if (!(ratio > 1.0)) throw validation_error("geometric grid: ratio must exceed 1");
    if (count == 0) throw validation_error("geometric grid: empty");
    std::vector<double> g(count);
    const double lx0 = std::log(x0), lr = std::log(ratio);
    for (std::size_t k = 0; k < count; ++k) g[k] = std::exp(lx0 + static_cast<double>(k) * lr);
    return g;
}

std::vector<double> arithmetic_grid(double start, double step, std::size_t count) {
    if (!(start > 0.0)) throw validation_error("arithmetic grid: start must be positive");
    if (!(step > 0.0)) throw validation_error("arithmetic grid: step must be positive");
    if (count == 0) throw validation_error("arithmetic grid: empty");
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; ++k) g[k] = start + static_cast<double>(k) * step;
    return g;
}

std::optional<double> geometric_ratio(const std::vector<double>& grid, double rel_tol) {
    if (grid.size() < 2 || grid.front() <= 0.0) return std::nullopt;
    std::vector<double> ratios(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) ratios[i] = grid[i + 1] / grid[i];
    std::vector<double> sorted = ratios;
    std::nth_element(sorted.begin(), sorted.begin() + (sorted.size() - 1) / 2, sorted.end());
    const double rho = sorted[(sorted.size() - 1) / 2];
    for (double r : ratios)
        if (std::abs(r - rho) > rel_tol * rho) return std::nullopt;
    return rho;
}

int ratio_to_shift(const std::vector<double>& grid, double r, double rel_tol) {
    if (!(r > 0.0)) throw validation_error("ratio must be positive");
    auto rho = geometric_ratio(grid, rel_tol);
    if (!rho) throw validation_error("grid is not geometric; ratios are index shifts only there");
    const double m_real = std::log(r) / std::log(*rho);
    const long m = std::lround(m_real);
    if (std::abs(m_real - static_cast<double>(m)) > 1e-6 ||
        std::abs(std::log(r) - static_cast<double>(m) * std::log(*rho)) > rel_tol)
        throw validation_error("ratio " + std::to_string(r) + " is off the grid's step set");
    return static_cast<int>(m);
}

std::optional<std::size_t> find_grid_index(const std::vector<double>& grid, double x,
                                           double rel_tol) {
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    auto close = [&](std::size_t i) {
        return std::abs(grid[i] - x) <= rel_tol * std::max({1.0, std::abs(x), std::abs(grid[i])});
    };
    if (it != grid.end()) {
        std::size_t i = static_cast<std::size_t>(it - grid.begin());
        if (close(i)) return i;
        if (i > 0 && close(i - 1)) return i - 1;
    } else if (!grid.empty() && close(grid.size() - 1)) {
        return grid.size() - 1;
    }
    return std::nullopt;
}

double sample_quantile(std::vector<double> v, double p) {
    if (v.empty()) throw validation_error("quantile of empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const std::size_t k = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

}  // namespace ob
