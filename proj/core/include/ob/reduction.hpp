#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ob/canonical.hpp"
#include "ob/exceptional.hpp"
#include "ob/grid.hpp"
#include "ob/pexider.hpp"
#include "ob/semiconstant.hpp"

namespace ob {

/// Per-ratio fit of the difference system
///   a_r(x) = Lambda(r) x + alpha(r), b_r(x) = Lambda(r) x + beta(r),
///   c_r(x) = Lambda(r) x + alpha(r) + beta(r).
struct DifferenceFit {
    double r = 1.0;
    double Lambda_r = 0.0;
    double alpha_r = 0.0;
    double beta_r = 0.0;
    double inlier_fraction = 0.0;
};

/// a(rx) - a(x) as a table on the same grid; r must be a power of the grid's
/// common ratio so the lookup is an exact index shift. Valid only where both
/// lookups are valid and unmasked (the output mask is the union).
GridFunction difference_function(const GridFunction& fn, double r,
                                 const ExceptionalMask1D& mask);

/// Pexider fit of the three difference tables (g = a_r, h = b_r, f = c_r);
/// r is recorded in the result for the law fits downstream.
DifferenceFit fit_difference(double r, const GridFunction& a_r, const GridFunction& b_r,
                             const GridFunction& c_r, const ExceptionalMask2D& mask,
                             const PexiderOptions& opts = {});

struct LawFit {
    double value = 0.0;
    std::vector<double> residuals;  // one per usable fit
    double max_abs_residual = 0.0;
};

/// lambda from Lambda(r) = lambda (r - 1): median (or least squares) of
/// Lambda(r)/(r-1) over fits with r != 1. Needs >= 3 distinct such ratios.
LawFit extract_lambda(const std::vector<DifferenceFit>& fits, FitMode mode = FitMode::robust);

/// kappa from alpha(r) = kappa ln r, same estimator; also reports the
/// multiplicative-law residuals alpha(r*s) - alpha(r) - alpha(s) for every
/// pair whose product is again in the fitted ratio set.
LawFit extract_kappa(const std::vector<DifferenceFit>& fits, FitMode mode = FitMode::robust);

/// h(x) = fn(x) - lambda x - kappa ln x, pointwise, flags copied.
GridFunction residual_h(const GridFunction& fn, double lambda, double kappa);

struct DeltaReadout {
    double delta = 0.0;
    double residual_mad = 0.0;
};

/// delta as the median over valid z of d(z) - kappa1 ln(z/(z+1)) + kappa2
/// ln(1+z); the residual is the median absolute deviation around it.
DeltaReadout recover_d(const OBParams& params_abc, const GridFunction& d_table,
                       FitMode mode = FitMode::robust);

struct RecoveryOptions {
    FitMode mode = FitMode::robust;
    double corruption_fraction = 0.05;   // drives the semiconstant tolerance
    double semiconstant_tol = -1.0;      // < 0 means derive from corruption_fraction
    std::vector<double> t_list = {1.0, 2.5, 5.0, 10.0};
    std::size_t min_pairs = 32;          // exact-sum pairs per difference fit
    double inlier_tol = 1e-8;
};

/// Default ratio set rho^m, m in {-16, -8, -4, 4, 8, 16} for the grid's rho.
std::vector<double> default_ratio_set(const std::vector<double>& grid);

struct RecoveryReport {
    OBParams params;
    std::map<std::string, double> stage_residuals;
    double kappa_consistency = 0.0;  // |kappa_a + kappa_b - kappa_c|
    double constraint_gap = 0.0;     // |alpha + beta - gamma - delta_readout|
    std::array<bool, 3> semiconstant_verdicts = {false, false, false};
    double lambda_spread = 0.0;      // max - min of the three per-function lambdas
    double d_delta = 0.0;            // delta read from the d table
    double d_residual = 0.0;
    std::vector<DifferenceFit> fits;
    std::array<SemiconstantVerdict, 3> h_diagnostics;
};

/// The whole constructive proof as a pipeline: difference tables per ratio,
/// per-ratio Pexider fits, the Lambda(r) = lambda (r-1) law, the logarithmic
/// intercept law, semi-constant residuals for the constants, and the
/// closed-form d readout. Requires a, b, c on commensurate geometric grids
/// and >= 3 ratios != 1 from the grid's step set.
RecoveryReport recover_all(const GridFunction& a, const GridFunction& b, const GridFunction& c,
                           const GridFunction& d, const ExceptionalMask2D& mask2d,
                           const std::vector<double>& ratios, const RecoveryOptions& opts = {});

}  // namespace ob
