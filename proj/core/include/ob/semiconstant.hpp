#pragma once

#include <complex>
#include <span>

#include "ob/grid.hpp"

namespace ob {

struct SemiconstantVerdict {
    bool is_semiconstant = false;
    double kappa_estimate = 0.0;
    double profile_deviation = 0.0;  // max over tested t of |1 - |w(t)||
    double scaling_deviation = 0.0;
    double phase_gap = 0.0;  // |arg w(t_min)/t_min - kappa| diagnostic, mod 2*pi/t
};

/// w(t) = integral of e^{i t G(y)} over y in (0,1], estimated by the
/// composite trapezoid rule over valid grid points and renormalized by the
/// covered span (so w(0) = 1 exactly). Needs >= 16 valid points in (0,1].
std::complex<double> characteristic_profile(const GridFunction& G, double t);

/// |x*w(t) - integral over (0,x] of e^{i t G(u)} du| with the same quadrature,
/// renormalized over the covered span of (0, x]. Near zero exactly when
/// G(xy) = G(y) holds off the masked points.
double scaling_consistency(const GridFunction& G, double x, double t);

/// Default acceptance tolerance for a given corruption fraction.
inline double default_semiconstant_tol(double corruption_fraction) {
    return 5.0 * corruption_fraction + 1e-4;
}

/// Semi-constant iff max_t |1 - |w(t)|| <= tol. kappa is the median of the
/// valid G values (branch-free); the phase of w at the smallest nonzero t is
/// kept as a cross-check only. t_list needs >= 2 nonzero entries.
SemiconstantVerdict is_semiconstant(const GridFunction& G, std::span<const double> t_list,
                                    double tol);

inline constexpr double kDefaultTList[] = {1.0, 2.5, 5.0, 10.0};

}  // namespace ob
