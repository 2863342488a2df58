#include "ob/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ob {

namespace {

template <class Fn>
auto with_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const validation_error& e) {
        throw validation_error(std::string("stage ") + stage + ": " + e.what());
    }
}

struct ValidXY {
    std::vector<double> x, v;
};

ValidXY valid_points(const GridFunction& g) {
    ValidXY out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.is_valid(i)) continue;
        out.x.push_back(g.grid[i]);
        out.v.push_back(g.values[i]);
    }
    return out;
}

}  // namespace

GridFunction difference_function(const GridFunction& fn, double r,
                                 const ExceptionalMask1D& mask) {
    fn.validate();
    if (!mask.empty() && mask.grid.size() != fn.grid.size())
        throw validation_error("difference_function: mask grid does not match table grid");
    const int m = ratio_to_shift(fn.grid, r);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(fn.size());
    GridFunction out;
    out.grid = fn.grid;
    out.values.assign(fn.size(), 0.0);
    out.valid.assign(fn.size(), 0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t k = i + m;
        if (k < 0 || k >= n) continue;
        const auto iu = static_cast<std::size_t>(i), ku = static_cast<std::size_t>(k);
        if (!fn.is_valid(iu) || !fn.is_valid(ku)) continue;
        if (mask.is_excluded(iu) || mask.is_excluded(ku)) continue;
        out.values[iu] = fn.values[ku] - fn.values[iu];
        out.valid[iu] = 1;
    }
    return out;
}

DifferenceFit fit_difference(double r, const GridFunction& a_r, const GridFunction& b_r,
                             const GridFunction& c_r, const ExceptionalMask2D& mask,
                             const PexiderOptions& opts) {
    const PexiderFit pf = fit_pexider(c_r, a_r, b_r, mask, opts);
    DifferenceFit fit;
    fit.r = r;
    fit.Lambda_r = pf.slope;
    fit.alpha_r = pf.alpha;
    fit.beta_r = pf.beta;
    fit.inlier_fraction = pf.inlier_fraction;
    return fit;
}

namespace {

LawFit fit_law(const std::vector<DifferenceFit>& fits, FitMode mode,
               double (*regressor)(const DifferenceFit&), double (*response)(const DifferenceFit&),
               const char* what) {
    std::vector<double> xs, ys;
    std::set<double> distinct;
    for (const auto& f : fits) {
        if (std::abs(f.r - 1.0) < 1e-12) continue;
        xs.push_back(regressor(f));
        ys.push_back(response(f));
        distinct.insert(f.r);
    }
    if (distinct.size() < 3)
        throw validation_error(std::string(what) + ": need >= 3 fits at distinct ratios != 1");

    LawFit law;
    if (mode == FitMode::robust) {
        std::vector<double> slopes(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) slopes[i] = ys[i] / xs[i];
        law.value = median_lower(std::move(slopes));
    } else {
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += xs[i] * ys[i];
            sxx += xs[i] * xs[i];
        }
        law.value = sxy / sxx;
    }
    for (const auto& f : fits) {
        law.residuals.push_back(response(f) - law.value * regressor(f));
        law.max_abs_residual = std::max(law.max_abs_residual, std::abs(law.residuals.back()));
    }
    return law;
}

}  // namespace

LawFit extract_lambda(const std::vector<DifferenceFit>& fits, FitMode mode) {
    return fit_law(
        fits, mode, [](const DifferenceFit& f) { return f.r - 1.0; },
        [](const DifferenceFit& f) { return f.Lambda_r; }, "extract_lambda");
}

LawFit extract_kappa(const std::vector<DifferenceFit>& fits, FitMode mode) {
    LawFit law = fit_law(
        fits, mode, [](const DifferenceFit& f) { return std::log(f.r); },
        [](const DifferenceFit& f) { return f.alpha_r; }, "extract_kappa");
    // Cauchy-multiplicative residuals alpha(r*s) - alpha(r) - alpha(s),
    // wherever the product lands back in the fitted ratio set.
    for (std::size_t p = 0; p < fits.size(); ++p) {
        for (std::size_t q = p; q < fits.size(); ++q) {
            const double prod = fits[p].r * fits[q].r;
            for (const auto& s : fits) {
                if (std::abs(s.r - prod) <= 1e-9 * prod) {
                    law.residuals.push_back(s.alpha_r - fits[p].alpha_r - fits[q].alpha_r);
                    law.max_abs_residual =
                        std::max(law.max_abs_residual, std::abs(law.residuals.back()));
                    break;
                }
            }
        }
    }
    return law;
}

GridFunction residual_h(const GridFunction& fn, double lambda, double kappa) {
    fn.validate();
    GridFunction h = fn;
    for (std::size_t i = 0; i < h.size(); ++i)
        h.values[i] = fn.values[i] - lambda * fn.grid[i] - kappa * std::log(fn.grid[i]);
    return h;
}

DeltaReadout recover_d(const OBParams& params_abc, const GridFunction& d_table, FitMode mode) {
    d_table.validate();
    std::vector<double> vals;
    for (std::size_t i = 0; i < d_table.size(); ++i) {
        if (!d_table.is_valid(i)) continue;
        const double z = d_table.grid[i];
        vals.push_back(d_table.values[i] - params_abc.kappa1 * std::log(z / (z + 1.0)) +
                       params_abc.kappa2 * std::log1p(z));
    }
    if (vals.size() < 2) throw validation_error("recover_d: fewer than 2 valid points");
    DeltaReadout out;
    if (mode == FitMode::robust) {
        out.delta = median_lower(vals);
        out.residual_mad = median_abs_deviation(vals, out.delta);
    } else {
        out.delta = mean(vals);
        double s = 0.0;
        for (double v : vals) s += std::abs(v - out.delta);
        out.residual_mad = s / static_cast<double>(vals.size());
    }
    return out;
}

std::vector<double> default_ratio_set(const std::vector<double>& grid) {
    const auto rho = geometric_ratio(grid);
    if (!rho) throw validation_error("default_ratio_set: grid is not geometric");
    std::vector<double> ratios;
    for (int m : {-16, -8, -4, 4, 8, 16}) {
        if (grid.size() < 16 + static_cast<std::size_t>(std::abs(m))) continue;
        ratios.push_back(std::exp(static_cast<double>(m) * std::log(*rho)));
    }
    if (ratios.size() < 3)
        throw validation_error("default_ratio_set: grid too short for 3 usable ratios");
    return ratios;
}

namespace {

/// The semiconstant machinery integrates over (0,1]; h tables live wherever
/// the data does, so rescale the abscissae by the top grid point first.
GridFunction rescale_to_unit(const GridFunction& g) {
    GridFunction out = g;
    const double top = g.grid.back();
    for (auto& x : out.grid) x /= top;
    return out;
}

double estimate_constant(const GridFunction& h, FitMode mode) {
    const ValidXY pts = valid_points(h);
    if (pts.v.empty()) throw validation_error("constant estimate: no valid points");
    return mode == FitMode::robust ? median_lower(pts.v) : mean(pts.v);
}

}  // namespace

RecoveryReport recover_all(const GridFunction& a, const GridFunction& b, const GridFunction& c,
                           const GridFunction& d, const ExceptionalMask2D& mask2d,
                           const std::vector<double>& ratios, const RecoveryOptions& opts) {
    a.validate();
    b.validate();
    c.validate();
    d.validate();
    std::set<double> distinct;
    for (double r : ratios)
        if (std::abs(r - 1.0) > 1e-12) distinct.insert(r);
    if (distinct.size() < 3)
        throw validation_error("recover_all: need >= 3 ratios different from 1");

    PexiderOptions popts;
    popts.mode = opts.mode;
    popts.inlier_tol = opts.inlier_tol;
    popts.min_pairs = opts.min_pairs;

    RecoveryReport report;
    std::vector<DifferenceFit> fits_a, fits_b, fits_c;
    double worst_pair_residual = 0.0;

    with_stage("difference_fit", [&] {
        const auto no_mask = ExceptionalMask1D::none();
        for (double r : ratios) {
            const GridFunction a_r = difference_function(a, r, no_mask);
            const GridFunction b_r = difference_function(b, r, no_mask);
            const GridFunction c_r = difference_function(c, r, no_mask);

            const PexiderFit pf = fit_pexider(c_r, a_r, b_r, mask2d, popts);
            fits_a.push_back({r, pf.slope, pf.alpha, pf.beta, pf.inlier_fraction});
            worst_pair_residual = std::max(worst_pair_residual, pf.residual_median);

            const ValidXY bp = valid_points(b_r);
            const LineFit bf = fit_line(bp.x, bp.v, opts.mode);
            fits_b.push_back({r, bf.slope, bf.intercept, 0.0, pf.inlier_fraction});

            const ValidXY cp = valid_points(c_r);
            const LineFit cf = fit_line(cp.x, cp.v, opts.mode);
            fits_c.push_back({r, cf.slope, cf.intercept, 0.0, pf.inlier_fraction});
        }
    });
    report.fits = fits_a;
    report.stage_residuals["difference_fit"] = worst_pair_residual;

    double lambda = 0.0;
    with_stage("lambda_law", [&] {
        const LawFit la = extract_lambda(fits_a, opts.mode);
        const LawFit lb = extract_lambda(fits_b, opts.mode);
        const LawFit lc = extract_lambda(fits_c, opts.mode);
        lambda = median_lower({la.value, lb.value, lc.value});
        report.lambda_spread = std::max({la.value, lb.value, lc.value}) -
                               std::min({la.value, lb.value, lc.value});
        double law_res = 0.0;
        for (const auto* fam : {&fits_a, &fits_b, &fits_c})
            for (const auto& f : *fam)
                law_res = std::max(law_res, std::abs(f.Lambda_r - lambda * (f.r - 1.0)));
        report.stage_residuals["lambda_law"] = law_res;
    });

    double kappa1 = 0.0, kappa2 = 0.0, kappa_c = 0.0;
    with_stage("kappa_law", [&] {
        const LawFit ka = extract_kappa(fits_a, opts.mode);
        // kappa_b comes from the beta(r) intercepts of the Pexider fits,
        // kappa_c from the c_r tables' own intercepts.
        std::vector<DifferenceFit> beta_fits = fits_a;
        for (auto& f : beta_fits) f.alpha_r = f.beta_r;
        const LawFit kb = extract_kappa(beta_fits, opts.mode);
        const LawFit kc = extract_kappa(fits_c, opts.mode);
        kappa1 = ka.value;
        kappa2 = kb.value;
        kappa_c = kc.value;
        report.stage_residuals["kappa_law"] =
            std::max({ka.max_abs_residual, kb.max_abs_residual, kc.max_abs_residual});
    });
    report.kappa_consistency = std::abs(kappa1 + kappa2 - kappa_c);

    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    with_stage("semiconstant", [&] {
        const GridFunction h_a = residual_h(a, lambda, kappa1);
        const GridFunction h_b = residual_h(b, lambda, kappa2);
        const GridFunction h_c = residual_h(c, lambda, kappa1 + kappa2);
        const double tol = opts.semiconstant_tol >= 0.0
                               ? opts.semiconstant_tol
                               : default_semiconstant_tol(opts.corruption_fraction);
        const GridFunction hs[3] = {rescale_to_unit(h_a), rescale_to_unit(h_b),
                                    rescale_to_unit(h_c)};
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            report.h_diagnostics[k] = is_semiconstant(hs[k], opts.t_list, tol);
            report.semiconstant_verdicts[k] = report.h_diagnostics[k].is_semiconstant;
            worst = std::max(worst, report.h_diagnostics[k].profile_deviation);
        }
        alpha = estimate_constant(h_a, opts.mode);
        beta = estimate_constant(h_b, opts.mode);
        gamma = estimate_constant(h_c, opts.mode);
        report.stage_residuals["semiconstant"] = worst;
    });

    report.params = OBParams::from_six(lambda, kappa1, kappa2, alpha, beta, gamma);

    with_stage("d_readout", [&] {
        const DeltaReadout readout = recover_d(report.params, d, opts.mode);
        report.d_delta = readout.delta;
        report.d_residual = readout.residual_mad;
        report.stage_residuals["d_readout"] = readout.residual_mad;
    });
    report.constraint_gap = std::abs(alpha + beta - gamma - report.d_delta);
    return report;
}

}  // namespace ob
