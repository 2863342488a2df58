#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ob/errors.hpp"
#include "ob/grid.hpp"

namespace ob {

/// The seven constants of the measurable solution family
///   a(x) = lambda*x + kappa1*ln x + alpha
///   b(x) = lambda*x + kappa2*ln x + beta
///   c(x) = lambda*x + (kappa1+kappa2)*ln x + gamma
///   d(x) = kappa1*ln(x/(x+1)) - kappa2*ln(1+x) + delta
/// subject to alpha + beta = gamma + delta.
///
/// Sign convention: lambda is the coefficient of x in a(x), so integrable
/// gamma-type densities carry lambda < 0.
///
/// Aggregate initialization bypasses the constraint; it exists for negative
/// tests. Use from_six / from_seven everywhere else.
struct OBParams {
    double lambda = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    /// Derives delta = alpha + beta - gamma.
    static OBParams from_six(double lambda, double kappa1, double kappa2, double alpha,
                             double beta, double gamma);

    /// Validates |alpha + beta - gamma - delta| <= 1e-12; throws otherwise.
    static OBParams from_seven(double lambda, double kappa1, double kappa2, double alpha,
                               double beta, double gamma, double delta);

    double constraint_gap() const { return alpha + beta - gamma - delta; }
};

struct ComponentValues {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

struct MultiplicativeValues {
    double f = 0.0;
    double g = 0.0;
    double p = 0.0;
    double q = 0.0;
};

/// All four components at x > 0. Throws validation_error for x <= 0,
/// numerical_error if any output is non-finite.
ComponentValues eval_quadruple(const OBParams& params, double x);

/// a(x) + b(y) - c(x+y) - d(x/y); analytically zero for any valid OBParams.
double residual(const OBParams& params, double x, double y);

/// Componentwise exp of eval_quadruple. Throws numerical_error when an
/// exponent leaves the representable range.
MultiplicativeValues multiplicative_quadruple(const OBParams& params, double x);

/// Exact parameters for a gamma pair G(shape1, rate), G(shape2, rate):
/// kappa_i = shape_i - 1, lambda = -rate, and the constants are the exact
/// log-normalizers of the X, Y and U = X+Y densities (delta derived).
OBParams gamma_to_params(double shape1, double shape2, double rate);

/// Tabulations of a, b, c, d on one grid, all points valid.
struct QuadrupleTables {
    GridFunction a, b, c, d;
};
QuadrupleTables tabulate_quadruple(const OBParams& params, const std::vector<double>& grid);

// --------------------------------------------------------------------------
// General (no-regularity) solution family:
//   a = A + L_a + alpha, b = A + L_b + beta, c = A + L_a + L_b + gamma,
//   d(x) = L_a(x/(x+1)) - L_b(x+1) + alpha + beta - gamma,
// with A additive and L_a, L_b logarithmic-type. A handle returns nullopt to
// decline a point outside its evaluable domain.
// --------------------------------------------------------------------------

using partial_fn = std::function<std::optional<double>(double)>;

struct GeneralSolutionSpec {
    partial_fn additive;
    partial_fn log_a;
    partial_fn log_b;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Throws validation_error when any handle declines its argument.
ComponentValues eval_general(const GeneralSolutionSpec& spec, double x);

/// Sampled functional-equation checks for the declared handles.
bool check_additive_on(const partial_fn& fn, std::span<const double> xs, double tol);
bool check_logarithmic_on(const partial_fn& fn, std::span<const double> xs, double tol);

// --------------------------------------------------------------------------
// Exact lattice realization of a non-linear additive function: on the
// rational span of {1, sqrt(2)} define A(q1 + q2*sqrt(2)) = c1*q1 + c2*q2.
// Additivity holds exactly in rational arithmetic; the function is evaluable
// only at registered lattice points when used as a partial_fn.
// --------------------------------------------------------------------------

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational of(long long n, long long d = 1) { return Rational(n, d); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct LatticePoint {
    Rational u;  // coefficient of 1
    Rational v;  // coefficient of sqrt(2)

    LatticePoint operator+(const LatticePoint& o) const { return {u + o.u, v + o.v}; }
    double value() const;
};

struct LatticeAdditive {
    Rational coeff_u;
    Rational coeff_v;

    Rational eval(const LatticePoint& p) const { return coeff_u * p.u + coeff_v * p.v; }
};

/// A(x) + A(y) - A(x+y) in exact arithmetic; zero for every additive A.
Rational lattice_pexider_residual(const LatticeAdditive& fn, const LatticePoint& x,
                                  const LatticePoint& y);

/// partial_fn view of a lattice additive function, evaluable exactly at the
/// registered points (keyed by their double value) and declining elsewhere.
partial_fn lattice_partial_fn(const LatticeAdditive& fn, std::span<const LatticePoint> domain);

}  // namespace ob
