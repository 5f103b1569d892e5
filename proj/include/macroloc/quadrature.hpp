#pragma once

#include <cstddef>
#include <functional>

namespace macroloc {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    std::size_t max_evaluations = std::size_t{1} << 20;
};

struct QuadratureResult {
    double value = 0;
    double error = 0;          // estimated absolute error
    double abs_integral = 0;   // integral of |f|, sets the roundoff floor
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    bool converged = false;
    bool roundoff_limited = false;  // tolerance below what the arithmetic can resolve
};

/// Integrands are evaluated and accumulated in extended precision: the
/// oscillatory transforms below cancel over seven or more decades.
using Integrand = std::function<long double(long double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Bisects the panel with
/// the largest error estimate until error <= max(abs_tol, rel_tol |value|),
/// the error reaches the roundoff floor, or max_evaluations is spent.
/// Never throws; check `converged`.
QuadratureResult integrate_gk(const Integrand& f, double a, double b, const QuadratureOptions& opts = {});

/// Integral over [0, inf) through the map x = scale * t / (1 - t).
QuadratureResult integrate_semi_infinite(const Integrand& f, double scale, const QuadratureOptions& opts = {});

/// Integral over [start, inf) of an integrand whose sign alternates on
/// consecutive intervals of length `half_period` (e.g. g(x) sin(s x) with
/// slowly varying g). Integrates one half period at a time and extrapolates the
/// partial sums with Wynn's epsilon algorithm.
QuadratureResult integrate_oscillatory_tail(const Integrand& f, double start, double half_period,
                                            const QuadratureOptions& opts = {});

/// Returns the value, or throws ConvergenceError naming `what`.
double require_converged(const QuadratureResult& r, const char* what);

}  // namespace macroloc
