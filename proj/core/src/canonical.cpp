#include "ob/canonical.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>

namespace ob {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw validation_error(std::string(what) + " must be positive");
}

constexpr double kConstraintTol = 1e-12;
constexpr double kMaxExponent = 709.0;  // exp overflows past ~709.78

}  // namespace

OBParams OBParams::from_six(double lambda, double kappa1, double kappa2, double alpha,
                            double beta, double gamma) {
    return OBParams{lambda, kappa1, kappa2, alpha, beta, gamma, alpha + beta - gamma};
}

OBParams OBParams::from_seven(double lambda, double kappa1, double kappa2, double alpha,
                              double beta, double gamma, double delta) {
    OBParams p{lambda, kappa1, kappa2, alpha, beta, gamma, delta};
    if (std::abs(p.constraint_gap()) > kConstraintTol)
        throw validation_error("OBParams: alpha + beta - gamma - delta exceeds 1e-12");
    return p;
}

ComponentValues eval_quadruple(const OBParams& params, double x) {
    require_positive(x, "eval_quadruple: x");
    const double lx = std::log(x);
    ComponentValues cv;
    cv.a = params.lambda * x + params.kappa1 * lx + params.alpha;
    cv.b = params.lambda * x + params.kappa2 * lx + params.beta;
    cv.c = params.lambda * x + (params.kappa1 + params.kappa2) * lx + params.gamma;
    cv.d = params.kappa1 * std::log(x / (x + 1.0)) - params.kappa2 * std::log1p(x) + params.delta;
    if (!std::isfinite(cv.a) || !std::isfinite(cv.b) || !std::isfinite(cv.c) ||
        !std::isfinite(cv.d))
        throw numerical_error("eval_quadruple: non-finite component");
    return cv;
}

double residual(const OBParams& params, double x, double y) {
    require_positive(x, "residual: x");
    require_positive(y, "residual: y");
    const double a = eval_quadruple(params, x).a;
    const double b = eval_quadruple(params, y).b;
    const double c = eval_quadruple(params, x + y).c;
    const double d = eval_quadruple(params, x / y).d;
    return a + b - c - d;
}

MultiplicativeValues multiplicative_quadruple(const OBParams& params, double x) {
    const ComponentValues cv = eval_quadruple(params, x);
    for (double e : {cv.a, cv.b, cv.c, cv.d})
        if (std::abs(e) > kMaxExponent)
            throw numerical_error("multiplicative_quadruple: exponent overflow");
    return {std::exp(cv.a), std::exp(cv.b), std::exp(cv.c), std::exp(cv.d)};
}

OBParams gamma_to_params(double shape1, double shape2, double rate) {
    require_positive(shape1, "gamma_to_params: shape1");
    require_positive(shape2, "gamma_to_params: shape2");
    require_positive(rate, "gamma_to_params: rate");
    const double lr = std::log(rate);
    const double alpha = shape1 * lr - std::lgamma(shape1);
    const double beta = shape2 * lr - std::lgamma(shape2);
    const double gamma = (shape1 + shape2) * lr - std::lgamma(shape1 + shape2);
    return OBParams::from_six(-rate, shape1 - 1.0, shape2 - 1.0, alpha, beta, gamma);
}

QuadrupleTables tabulate_quadruple(const OBParams& params, const std::vector<double>& grid) {
    QuadrupleTables t;
    t.a = tabulate_on(grid, [&](double x) { return eval_quadruple(params, x).a; });
    t.b = tabulate_on(grid, [&](double x) { return eval_quadruple(params, x).b; });
    t.c = tabulate_on(grid, [&](double x) { return eval_quadruple(params, x).c; });
    t.d = tabulate_on(grid, [&](double x) { return eval_quadruple(params, x).d; });
    return t;
}

namespace {

double demand(const partial_fn& fn, double x, const char* role) {
    auto v = fn(x);
    if (!v) throw validation_error(std::string("eval_general: ") + role +
                                   " handle declined x=" + std::to_string(x));
    return *v;
}

}  // namespace

ComponentValues eval_general(const GeneralSolutionSpec& spec, double x) {
    require_positive(x, "eval_general: x");
    const double A = demand(spec.additive, x, "additive");
    const double La = demand(spec.log_a, x, "log_a");
    const double Lb = demand(spec.log_b, x, "log_b");
    ComponentValues cv;
    cv.a = A + La + spec.alpha;
    cv.b = A + Lb + spec.beta;
    cv.c = A + La + Lb + spec.gamma;
    cv.d = demand(spec.log_a, x / (x + 1.0), "log_a") - demand(spec.log_b, x + 1.0, "log_b") +
           spec.alpha + spec.beta - spec.gamma;
    return cv;
}

bool check_additive_on(const partial_fn& fn, std::span<const double> xs, double tol) {
    for (double x : xs) {
        for (double y : xs) {
            auto fx = fn(x), fy = fn(y), fs = fn(x + y);
            if (!fx || !fy || !fs) continue;  // outside the declared domain
            if (std::abs(*fx + *fy - *fs) > tol) return false;
        }
    }
    return true;
}

bool check_logarithmic_on(const partial_fn& fn, std::span<const double> xs, double tol) {
    for (double x : xs) {
        for (double y : xs) {
            auto fx = fn(x), fy = fn(y), fp = fn(x * y);
            if (!fx || !fy || !fp) continue;
            if (std::abs(*fx + *fy - *fp) > tol) return false;
        }
    }
    return true;
}

namespace {

long long checked_gcd(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw validation_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        den = 1;
        return;
    }
    const long long g = checked_gcd(num, den);
    num /= g;
    den /= g;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

double LatticePoint::value() const {
    static const double kSqrt2 = std::sqrt(2.0);
    return u.to_double() + v.to_double() * kSqrt2;
}

Rational lattice_pexider_residual(const LatticeAdditive& fn, const LatticePoint& x,
                                  const LatticePoint& y) {
    return fn.eval(x) + fn.eval(y) - fn.eval(x + y);
}

partial_fn lattice_partial_fn(const LatticeAdditive& fn, std::span<const LatticePoint> domain) {
    auto table = std::make_shared<std::unordered_map<double, double>>();
    table->reserve(domain.size());
    for (const auto& p : domain) (*table)[p.value()] = fn.eval(p).to_double();
    return [table](double x) -> std::optional<double> {
        auto it = table->find(x);
        if (it == table->end()) return std::nullopt;
        return it->second;
    };
}

}  // namespace ob
