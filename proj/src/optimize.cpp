#include "macroloc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace macroloc {

namespace {

using Point = std::vector<double>;

struct Vertex {
    Point x;
    double f;
};

Point affine(const Point& a, const Point& b, double t) {
    // a + t (b - a)
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Point&)>& f, const Point& x0, const Point& step,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0 || step.size() != n || opts.x_tol.size() != n)
        throw InputError("nelder_mead: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(step[i] != 0) || !std::isfinite(step[i])) throw InputError("nelder_mead: zero initial step");
        if (!(opts.x_tol[i] > 0)) throw InputError("nelder_mead: tolerances must be positive");
    }

    NelderMeadResult res;
    auto eval = [&](const Point& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isnan(v) ? HUGE_VAL : v;
    };

    std::vector<Vertex> s;
    s.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        Point x = x0;
        x[i] += step[i];
        s.push_back({x, eval(x)});
    }
    // Ties keep their previous order, so the run is reproducible.
    auto order = [&] { std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; }); };
    auto extent = [&] {
        Point e(n, 0.0);
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < n; ++i) e[i] = std::max(e[i], std::abs(s[j].x[i] - s[0].x[i]));
        return e;
    };
    auto small = [&](const Point& e) {
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] > opts.x_tol[i]) return false;
        return true;
    };

    order();
    while (true) {
        res.simplex_extent = extent();
        if (small(res.simplex_extent)) {
            res.converged = true;
            break;
        }
        if (res.iterations >= opts.max_iterations) break;
        ++res.iterations;

        Point centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += s[j].x[i] / n;
        Vertex& worst = s[n];

        const Point xr = affine(centroid, worst.x, -1.0);
        const double fr = eval(xr);
        if (fr < s[0].f) {
            const Point xe = affine(centroid, worst.x, -2.0);
            const double fe = eval(xe);
            worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < s[n - 1].f) {
            worst = {xr, fr};
        } else {
            const bool outside = fr < worst.f;
            const Point xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, worst.x, 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : worst.f)) {
                worst = {xc, fc};
            } else {
                for (std::size_t j = 1; j <= n; ++j) {
                    s[j].x = affine(s[0].x, s[j].x, 0.5);
                    s[j].f = eval(s[j].x);
                }
            }
        }
        order();
    }
    res.x = s[0].x;
    res.fx = s[0].f;
    return res;
}

double solid_energy(double lambda, double d, const TwoYukawaParams& pot, const UnitSystem& units,
                    const SolverOptions& opts) {
    return energy_per_particle(OrbitalParams{lambda, std::nullopt}, pot, d, units, opts.energy, opts.shell_range)
        .total;
}

SolidSolution minimize_solid(const TwoYukawaParams& pot, const UnitSystem& units, const SolverOptions& opts) {
    if (!(opts.lambda0 > 0) || !(opts.d0 > 0)) throw InputError("initial lambda and d must be positive");
    if (!(opts.x_rel_tol > 0 && opts.x_rel_tol < 1)) throw InputError("optimizer tolerance must lie in (0, 1)");

    auto objective = [&](const Point& x) {
        const double lambda = std::exp(x[0]);
        const double d = x[1];
        // Outside the physical domain: reject the step rather than fail.
        if (!(d > 0.5 * pot.sigma) || !(lambda * pot.sigma > pot.m)) return HUGE_VAL;
        return solid_energy(lambda, d, pot, units, opts);
    };
    NelderMeadOptions nm;
    // ln(lambda) moves by the relative change of lambda
    nm.x_tol = {opts.x_rel_tol, opts.x_rel_tol * opts.d0};
    nm.max_iterations = opts.max_iterations;
    const NelderMeadResult r = nelder_mead(objective, {std::log(opts.lambda0), opts.d0}, {0.1, 0.05}, nm);

    SolidSolution sol;
    sol.lambda_star = std::exp(r.x[0]);
    sol.d_star = r.x[1];
    sol.u_min = r.fx;
    if (!r.converged) {
        std::ostringstream os;
        os.precision(10);
        os << "solid minimization did not converge in " << r.iterations << " iterations; best lambda "
           << sol.lambda_star << ", d " << sol.d_star << ", u " << sol.u_min;
        throw SolidNonConvergence(os.str(), sol.lambda_star, sol.d_star, sol.u_min);
    }
    sol.d_star_angstrom = length_to_angstrom(units, sol.d_star);
    sol.u_cal_per_mole = energy_to_cal_per_mole(units, sol.u_min);
    sol.iterations = r.iterations;
    sol.evaluations = r.evaluations;
    sol.simplex_ln_lambda = r.simplex_extent[0];
    sol.simplex_d = r.simplex_extent[1];
    return sol;
}

BulkModulusEstimate bulk_modulus_from_curve(const std::function<double(double)>& u, double d_star, double h) {
    if (!(d_star > 0) || !(h > 0 && h < 0.5)) throw InputError("bulk modulus needs d > 0 and a step in (0, 0.5)");
    const double v = d_star * d_star * d_star / std::sqrt(2.0);
    const double dv = 3 * d_star * d_star / std::sqrt(2.0);
    const double d2v = 6 * d_star / std::sqrt(2.0);
    const double u0 = u(d_star);
    auto at_step = [&](double rel) {
        const double dd = rel * d_star;
        const double p1 = u(d_star + dd), m1 = u(d_star - dd);
        const double p2 = u(d_star + 2 * dd), m2 = u(d_star - 2 * dd);
        const double first = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * dd);
        const double second = (-p2 + 16 * p1 - 30 * u0 + 16 * m1 - m2) / (12 * dd * dd);
        // chain rule from d to v = d^3 / sqrt2
        return v * (second - first * d2v / dv) / (dv * dv);
    };
    BulkModulusEstimate b;
    b.value = at_step(h);
    b.half_step_value = at_step(0.5 * h);
    b.rel_difference = std::abs(b.value - b.half_step_value) / std::abs(b.half_step_value);
    b.reduced_confidence = !(b.rel_difference <= 0.01);
    return b;
}

double relax_lambda(double d, double guess, const TwoYukawaParams& pot, const UnitSystem& units,
                    const SolverOptions& opts) {
    auto f = [&](double lnl) { return solid_energy(std::exp(lnl), d, pot, units, opts); };
    double lo = std::log(guess) - 0.25, hi = std::log(guess) + 0.25;
    for (int attempt = 0; attempt < 8; ++attempt) {
        boost::uintmax_t iters = 200;
        const auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, 30, iters);
        (void)fx;
        if (iters >= 200) throw ConvergenceError("lambda relaxation: Brent search did not converge");
        const double width = hi - lo;
        // a minimum pinned to the bracket edge means the bracket missed it
        if (x - lo < 1e-3 * width) {
            lo -= 0.5 * width;
            hi -= 0.5 * width;
        } else if (hi - x < 1e-3 * width) {
            lo += 0.5 * width;
            hi += 0.5 * width;
        } else {
            return std::exp(x);
        }
    }
    throw ConvergenceError("lambda relaxation: no interior minimum found");
}

BulkModulusEstimate bulk_modulus(SolidSolution& sol, const TwoYukawaParams& pot, const UnitSystem& units,
                                 const SolverOptions& opts) {
    if (!(sol.lambda_star > 0) || !(sol.d_star > 0)) throw InputError("bulk modulus needs a solved optimum");
    auto curve = [&](double d) {
        const double lambda = opts.relax_lambda ? relax_lambda(d, sol.lambda_star, pot, units, opts) : sol.lambda_star;
        return solid_energy(lambda, d, pot, units, opts);
    };
    sol.bulk = bulk_modulus_from_curve(curve, sol.d_star, opts.fd_step);
    sol.bulk_modulus = sol.bulk.value;
    sol.bulk_modulus_kbar = pressure_to_kbar(units, sol.bulk.value);
    return sol.bulk;
}

SolidSolution solve_solid(const TwoYukawaParams& pot, const UnitSystem& units, const SolverOptions& opts) {
    SolidSolution sol = minimize_solid(pot, units, opts);
    bulk_modulus(sol, pot, units, opts);
    return sol;
}

}  // namespace macroloc
