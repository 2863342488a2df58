#include "ob/semiconstant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ob/robust.hpp"

namespace ob {

namespace {

constexpr std::size_t kMinQuadraturePoints = 16;

struct QuadPoints {
    std::vector<double> y;
    std::vector<double> g;
};

QuadPoints valid_points_below(const GridFunction& G, double upper) {
    QuadPoints q;
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!G.is_valid(i)) continue;
        if (G.grid[i] > upper * (1.0 + 1e-12)) break;
        q.y.push_back(G.grid[i]);
        q.g.push_back(G.values[i]);
    }
    return q;
}

/// Trapezoid estimate of the mean of e^{itG} over the covered span.
std::complex<double> renormalized_trapezoid(const QuadPoints& q, double t) {
    const std::size_t n = q.y.size();
    std::complex<double> sum = 0.0;
    double span = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double dy = q.y[k + 1] - q.y[k];
        const std::complex<double> lo(std::cos(t * q.g[k]), std::sin(t * q.g[k]));
        const std::complex<double> hi(std::cos(t * q.g[k + 1]), std::sin(t * q.g[k + 1]));
        sum += 0.5 * dy * (lo + hi);
        span += dy;
    }
    return sum / span;
}

}  // namespace

std::complex<double> characteristic_profile(const GridFunction& G, double t) {
    G.validate();
    const QuadPoints q = valid_points_below(G, 1.0);
    if (q.y.size() < kMinQuadraturePoints)
        throw validation_error("characteristic_profile: fewer than 16 valid points in (0,1]");
    return renormalized_trapezoid(q, t);
}

double scaling_consistency(const GridFunction& G, double x, double t) {
    if (!(x > 0.0)) throw validation_error("scaling_consistency: x must be positive");
    const std::complex<double> w = characteristic_profile(G, t);
    const QuadPoints q = valid_points_below(G, x);
    if (q.y.size() < kMinQuadraturePoints)
        throw validation_error("scaling_consistency: fewer than 16 valid points in (0,x]");
    const std::complex<double> integral = static_cast<double>(x) * renormalized_trapezoid(q, t);
    return std::abs(static_cast<double>(x) * w - integral);
}

SemiconstantVerdict is_semiconstant(const GridFunction& G, std::span<const double> t_list,
                                    double tol) {
    std::vector<double> ts;
    for (double t : t_list)
        if (t != 0.0) ts.push_back(t);
    if (ts.size() < 2)
        throw validation_error("is_semiconstant: need at least 2 nonzero t values");

    SemiconstantVerdict v;
    double t_min = ts.front();
    std::complex<double> w_min = characteristic_profile(G, t_min);
    v.profile_deviation = std::abs(1.0 - std::abs(w_min));
    for (std::size_t k = 1; k < ts.size(); ++k) {
        const double t = ts[k];
        const std::complex<double> w = characteristic_profile(G, t);
        v.profile_deviation = std::max(v.profile_deviation, std::abs(1.0 - std::abs(w)));
        if (std::abs(t) < std::abs(t_min)) {
            t_min = t;
            w_min = w;
        }
    }

    std::vector<double> gv;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (G.is_valid(i)) gv.push_back(G.values[i]);
    v.kappa_estimate = median_lower(std::move(gv));

    const double period = 2.0 * std::numbers::pi / std::abs(t_min);
    double gap = std::fmod(std::arg(w_min) / t_min - v.kappa_estimate, period);
    if (gap < 0.0) gap += period;
    v.phase_gap = std::min(gap, period - gap);

    const double x_top = G.grid[G.size() - 1];
    v.scaling_deviation = scaling_consistency(G, x_top, t_min) / x_top;

    v.is_semiconstant = v.profile_deviation <= tol && std::isfinite(v.kappa_estimate);
    return v;
}

}  // namespace ob
