#include "ob/pexider.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ob {

namespace {

void check_mask_axis(const std::vector<double>& mask_grid, const std::vector<double>& fn_grid,
                     const char* name) {
    if (mask_grid.size() != fn_grid.size())
        throw validation_error(std::string("fit_pexider: mask ") + name +
                               " does not match the table grid");
    for (std::size_t i = 0; i < mask_grid.size(); ++i)
        if (std::abs(mask_grid[i] - fn_grid[i]) > 1e-9 * std::max(1.0, std::abs(fn_grid[i])))
            throw validation_error(std::string("fit_pexider: mask ") + name +
                                   " does not match the table grid");
}

}  // namespace

PexiderFit fit_pexider(const GridFunction& f, const GridFunction& g, const GridFunction& h,
                       const ExceptionalMask2D& mask, const PexiderOptions& opts) {
    f.validate();
    g.validate();
    h.validate();
    if (!mask.empty()) {
        mask.validate();
        check_mask_axis(mask.x_grid, g.grid, "x_grid");
        check_mask_axis(mask.y_grid, h.grid, "y_grid");
    }

    struct Pair {
        std::size_t i, j, k;
    };
    std::vector<Pair> pairs;
    std::vector<std::uint8_t> column_used(g.size(), 0), row_used(h.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.is_valid(i)) continue;
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (!h.is_valid(j)) continue;
            if (mask.is_excluded(i, j)) continue;
            const auto k = find_grid_index(f.grid, g.grid[i] + h.grid[j], opts.snap_rel_tol);
            if (!k || !f.is_valid(*k)) continue;
            pairs.push_back({i, j, *k});
            column_used[i] = 1;
            row_used[j] = 1;
        }
    }
    if (pairs.size() < opts.min_pairs)
        throw validation_error("fit_pexider: insufficient data, " + std::to_string(pairs.size()) +
                               " unmasked pairs < " + std::to_string(opts.min_pairs));

    std::vector<double> gx, gv;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!column_used[i]) continue;
        gx.push_back(g.grid[i]);
        gv.push_back(g.values[i]);
    }
    if (std::set<double>(gx.begin(), gx.end()).size() < 2)
        throw validation_error("fit_pexider: degenerate grid, fewer than 2 distinct abscissae");

    PexiderFit fit;
    const LineFit gfit = fit_line(gx, gv, opts.mode);
    fit.slope = gfit.slope;
    fit.alpha = gfit.intercept;

    std::vector<double> hres;
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (!row_used[j]) continue;
        hres.push_back(h.values[j] - fit.slope * h.grid[j]);
    }
    fit.beta = (opts.mode == FitMode::robust) ? median_lower(std::move(hres)) : mean(hres);

    std::vector<double> abs_res;
    abs_res.reserve(pairs.size());
    std::size_t inliers = 0;
    for (const auto& p : pairs) {
        const double r = g.values[p.i] + h.values[p.j] - f.values[p.k];
        abs_res.push_back(std::abs(r));
        if (std::abs(r) <= opts.inlier_tol) ++inliers;
    }
    fit.residual_median = median_lower(std::move(abs_res));
    fit.inlier_fraction = static_cast<double>(inliers) / static_cast<double>(pairs.size());
    return fit;
}

bool halfline_determination_check(const PexiderFit& fit_tail, const PexiderFit& fit_full,
                                  double c) {
    if (!(c > 0.0)) throw validation_error("halfline_determination_check: c must be positive");
    auto agree = [](double lhs, double rhs) {
        return std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs));
    };
    return agree(fit_tail.slope, fit_full.slope) && agree(fit_tail.alpha, fit_full.alpha) &&
           agree(fit_tail.beta, fit_full.beta);
}

}  // namespace ob
