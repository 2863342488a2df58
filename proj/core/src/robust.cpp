#include "ob/robust.hpp"

#include <algorithm>
#include <cmath>

#include "ob/errors.hpp"

namespace ob {

double median_lower(std::vector<double> v) {
    if (v.empty()) throw validation_error("median of empty set");
    const std::size_t k = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

double median_abs_deviation(std::span<const double> v, double center) {
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::abs(v[i] - center);
    return median_lower(std::move(dev));
}

double mean(std::span<const double> v) {
    if (v.empty()) throw validation_error("mean of empty set");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double siegel_slope(std::span<const double> x, std::span<const double> v) {
    const std::size_t n = x.size();
    if (n != v.size() || n < 2) throw validation_error("siegel slope: need >= 2 points");
    std::vector<double> per_point;
    per_point.reserve(n);
    std::vector<double> slopes;
    slopes.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        slopes.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || x[j] == x[i]) continue;
            slopes.push_back((v[j] - v[i]) / (x[j] - x[i]));
        }
        if (!slopes.empty()) per_point.push_back(median_lower(slopes));
    }
    if (per_point.empty()) throw validation_error("siegel slope: all abscissae coincide");
    return median_lower(std::move(per_point));
}

LineFit fit_line(std::span<const double> x, std::span<const double> v, FitMode mode) {
    const std::size_t n = x.size();
    if (n != v.size() || n < 2) throw validation_error("line fit: need >= 2 points");
    LineFit fit;
    if (mode == FitMode::robust) {
        fit.slope = siegel_slope(x, v);
        std::vector<double> resid(n);
        for (std::size_t i = 0; i < n; ++i) resid[i] = v[i] - fit.slope * x[i];
        fit.intercept = median_lower(std::move(resid));
    } else {
        const double mx = mean(x), mv = mean(v);
        double sxx = 0.0, sxv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxv += (x[i] - mx) * (v[i] - mv);
        }
        if (sxx == 0.0) throw validation_error("line fit: degenerate abscissae");
        fit.slope = sxv / sxx;
        fit.intercept = mv - fit.slope * mx;
    }
    return fit;
}

}  // namespace ob
