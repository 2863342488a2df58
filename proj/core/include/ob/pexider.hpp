#pragma once

#include <cstddef>

#include "ob/exceptional.hpp"
#include "ob/grid.hpp"
#include "ob/robust.hpp"

namespace ob {

/// Fit of f(x+y) = g(x) + h(y) from masked tabulations; the additive part is
/// reported through its measurable representative A(x) = slope * x.
struct PexiderFit {
    double slope = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double inlier_fraction = 0.0;
    double residual_median = 0.0;
};

struct PexiderOptions {
    FitMode mode = FitMode::robust;
    double inlier_tol = 1e-8;      // |f(x+y) - g(x) - h(y)| below this is an inlier
    std::size_t min_pairs = 100;   // usable (x, y, x+y) triples required
    double snap_rel_tol = 1e-9;    // tolerance for the x+y lookup on f's grid
};

/// Recovers (slope, alpha, beta) from tables of f, g, h. Usable pairs are
/// those where g, h and the exact-sum lookup on f are all valid and the 2-D
/// mask does not exclude (x, y). The slope comes from g alone (repeated
/// median over pairwise differences, restricted to columns with at least one
/// usable pair); intercepts are medians of g - slope*x and h - slope*y; f
/// enters through the residual cross-check and the inlier fraction.
///
/// Throws validation_error when fewer than min_pairs pairs survive or fewer
/// than 2 distinct unmasked abscissae remain.
PexiderFit fit_pexider(const GridFunction& f, const GridFunction& g, const GridFunction& h,
                       const ExceptionalMask2D& mask, const PexiderOptions& opts = {});

/// Numerical analogue of half-line determination: a fit computed from
/// abscissae above c must agree with the full-grid fit. True iff slope and
/// both constants agree within 1e-8 relative.
bool halfline_determination_check(const PexiderFit& fit_tail, const PexiderFit& fit_full,
                                  double c);

}  // namespace ob
