#pragma once

#include <functional>
#include <vector>

#include "macroloc/energy.hpp"
#include "macroloc/errors.hpp"

namespace macroloc {

struct NelderMeadOptions {
    std::vector<double> x_tol;  // per-coordinate absolute simplex extent
    int max_iterations = 1000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0;
    int iterations = 0;
    int evaluations = 0;
    std::vector<double> simplex_extent;  // per coordinate, max |x_i - x_best|
    bool converged = false;
};

/// Derivative-free minimization with the standard coefficients (1, 2, 1/2, 1/2).
/// The initial simplex is x0 plus one step along each axis. Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts);

struct SolverOptions {
    double lambda0 = 50.0;  // 1/sigma
    double d0 = 1.1;        // sigma
    double x_rel_tol = 1e-6;
    int max_iterations = 1000;
    double shell_range = kDefaultShellRange;  // multiples of d
    EnergyOptions energy;
    bool relax_lambda = true;  // re-optimize lambda along the compression curve
    double fd_step = 1e-2;     // relative step in d for the bulk modulus
};

struct BulkModulusEstimate {
    double value = 0;          // v d2u/dv2 at step h, epsilon/sigma^3
    double half_step_value = 0;
    double rel_difference = 0;  // |B(h) - B(h/2)| / |B(h/2)|
    bool reduced_confidence = false;  // rel_difference above 1%
};

struct SolidSolution {
    double lambda_star = 0;
    double d_star = 0;
    double d_star_angstrom = 0;
    double u_min = 0;
    double u_cal_per_mole = 0;
    BulkModulusEstimate bulk;
    double bulk_modulus = 0;
    double bulk_modulus_kbar = 0;
    int iterations = 0;
    int evaluations = 0;
    double simplex_ln_lambda = 0;
    double simplex_d = 0;
};

/// Minimizer gave up; carries the best point reached.
class SolidNonConvergence : public ConvergenceError {
public:
    SolidNonConvergence(const std::string& what, double lambda, double d, double u)
        : ConvergenceError(what), lambda(lambda), d(d), u(u) {}
    double lambda, d, u;
};

/// Energy per particle of the FCC solid at (lambda, d).
double solid_energy(double lambda, double d, const TwoYukawaParams& pot, const UnitSystem& units,
                    const SolverOptions& opts);

/// Nelder-Mead over (ln lambda, d). Fills everything except the bulk modulus.
SolidSolution minimize_solid(const TwoYukawaParams& pot, const UnitSystem& units, const SolverOptions& opts = {});

/// B = v d2u/dv2 at d_star, v = d^3/sqrt2, from five-point differences in d with
/// relative step h, repeated with h/2.
BulkModulusEstimate bulk_modulus_from_curve(const std::function<double(double)>& u, double d_star, double h);

/// lambda minimizing the energy at fixed d, searched around `guess`.
double relax_lambda(double d, double guess, const TwoYukawaParams& pot, const UnitSystem& units,
                    const SolverOptions& opts);

/// Bulk modulus along the relaxed (or frozen-lambda) curve; also stores it in sol.
BulkModulusEstimate bulk_modulus(SolidSolution& sol, const TwoYukawaParams& pot, const UnitSystem& units,
                                 const SolverOptions& opts = {});

/// minimize_solid followed by bulk_modulus.
SolidSolution solve_solid(const TwoYukawaParams& pot, const UnitSystem& units, const SolverOptions& opts = {});

}  // namespace macroloc
