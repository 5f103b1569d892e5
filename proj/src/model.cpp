#include "macroloc/model.hpp"

#include <cmath>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0; }

void require_unbounded(const OrbitalParams& p) {
    if (p.cutoff_a) throw InputError("analytic transform requires an orbital without cutoff");
}

}  // namespace

void validate(const OrbitalParams& p) {
    if (!positive(p.lambda)) throw InputError("orbital exponent lambda must be positive");
    if (p.cutoff_a && !positive(*p.cutoff_a)) throw InputError("orbital cutoff must be positive");
}

void validate(const TwoYukawaParams& p) {
    if (!positive(p.epsilon) || !positive(p.sigma)) throw InputError("potential scales must be positive");
    if (!positive(p.b)) throw InputError("two-Yukawa b must be positive");
    if (!(positive(p.m) && p.n > p.m)) throw InputError("two-Yukawa exponents need n > m > 0");
}

void validate(const GravParams& p) {
    if (!positive(p.kappa)) throw InputError("kappa must be positive");
}

double orbital_norm_constant(const OrbitalParams& p) {
    validate(p);
    const double l3 = p.lambda * p.lambda * p.lambda;
    if (!p.cutoff_a) return l3 / (8.0 * M_PI);
    const double x = p.lambda * *p.cutoff_a;
    // 1 - e^{-x}(1 + x + x^2/2) written with expm1 to keep precision at small x
    const double inside = -std::expm1(-x) - std::exp(-x) * (x + 0.5 * x * x);
    return l3 / (8.0 * M_PI * inside);
}

double orbital_density(const OrbitalParams& p, double r) {
    if (p.cutoff_a && r > *p.cutoff_a) return 0;
    return orbital_norm_constant(p) * std::exp(-p.lambda * r);
}

double density_fourier(const OrbitalParams& p, double k) {
    validate(p);
    require_unbounded(p);
    if (!(k >= 0)) throw InputError("wavenumber must be non-negative");
    const double q = k / p.lambda;
    const double t = 1.0 + q * q;
    return 1.0 / (t * t);
}

double two_yukawa(double r, const TwoYukawaParams& p) {
    if (!(r > 0)) throw InputError("two-Yukawa distance must be positive");
    const double x = r / p.sigma;
    return -p.epsilon * p.b * (std::exp(-p.m * (x - 1)) - std::exp(-p.n * (x - 1))) / x;
}

// int e^{-a r}/r e^{-i k.r} d^3r = 4 pi / (k^2 + a^2), applied with a = m/sigma and n/sigma.
double two_yukawa_fourier(double k, const TwoYukawaParams& p) {
    if (!(k >= 0)) throw InputError("wavenumber must be non-negative");
    const double ks = k * p.sigma;
    const double s3 = p.sigma * p.sigma * p.sigma;
    return -4.0 * M_PI * p.epsilon * p.b * s3 *
           (std::exp(p.m) / (ks * ks + p.m * p.m) - std::exp(p.n) / (ks * ks + p.n * p.n));
}

double sph_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

QuadratureResult pair_energy_detailed(const OrbitalParams& p, const TwoYukawaParams& pot, double s,
                                      const QuadratureOptions& opts) {
    validate(p);
    validate(pot);
    require_unbounded(p);
    if (!(s >= 0) || !std::isfinite(s)) throw InputError("separation must be non-negative");

    using Real = long double;
    const Real lam = p.lambda;
    const Real sig = pot.sigma;
    const Real em = std::exp(static_cast<Real>(pot.m)), en = std::exp(static_cast<Real>(pot.n));
    const Real m2 = static_cast<Real>(pot.m) * pot.m, n2 = static_cast<Real>(pot.n) * pot.n;
    const Real pref = -4 * static_cast<Real>(M_PI) * pot.epsilon * pot.b * sig * sig * sig /
                      (2 * static_cast<Real>(M_PI) * static_cast<Real>(M_PI));
    const Real sep = s;
    auto integrand = [&](Real k) -> Real {
        const Real q = k / lam;
        const Real t = 1 + q * q;
        const Real nk = 1 / (t * t);
        const Real ks2 = (k * sig) * (k * sig);
        const Real v = em / (ks2 + m2) - en / (ks2 + n2);
        const Real x = k * sep;
        const Real j0 = std::abs(x) < 1e-4L ? 1 - x * x / 6 * (1 - x * x / 20) : std::sin(x) / x;
        return pref * k * k * v * nk * nk * j0;
    };
    // Few oscillations under the density form factor: map the whole half line.
    if (s * 8 * p.lambda < M_PI) return integrate_semi_infinite(integrand, p.lambda, opts);

    // Otherwise resolve [0, K0] adaptively, K0 on a zero of j0 and past the
    // form-factor knee at k ~ lambda, then sum the remaining half periods with
    // extrapolation. K0 = 4 lambda unless that spans more than 256 half periods.
    const double half = M_PI / s;
    const double periods = std::min(std::ceil(4.0 * p.lambda / half),
                                    std::max(256.0, std::ceil(p.lambda / half)));
    const double k0 = periods * half;
    // Head and tail are each much larger than their sum when s is large, so
    // both are resolved well beyond the tolerance asked of the result.
    QuadratureOptions part = opts;
    part.rel_tol = 1e-3 * opts.rel_tol;
    QuadratureResult head = integrate_gk(integrand, 0.0, k0, part);
    const QuadratureResult tail = integrate_oscillatory_tail(integrand, k0, half, part);
    head.value += tail.value;
    head.error += tail.error;
    head.abs_integral += tail.abs_integral;
    head.evaluations += tail.evaluations;
    head.intervals += tail.intervals;
    head.converged = head.converged && tail.converged;
    head.roundoff_limited = head.roundoff_limited || tail.roundoff_limited;
    return head;
}

double pair_energy(const OrbitalParams& p, const TwoYukawaParams& pot, double s, const QuadratureOptions& opts) {
    return require_converged(pair_energy_detailed(p, pot, s, opts), "pair_energy");
}

double pair_energy_far_field(const OrbitalParams& p, const TwoYukawaParams& pot, double s) {
    validate(p);
    validate(pot);
    require_unbounded(p);
    if (!(s > 0)) throw InputError("far-field separation must be positive");
    auto term = [&](double a) {
        const double alpha = a / pot.sigma;
        const double q = alpha / p.lambda;
        if (!(q < 1)) throw InputError("far-field form requires lambda above the Yukawa exponents");
        const double f = 1.0 / (1.0 - q * q);
        const double f2 = f * f;
        return f2 * f2 * std::exp(a - alpha * s);
    };
    return -pot.epsilon * pot.b * pot.sigma * (term(pot.m) - term(pot.n)) / s;
}

bool far_field_applicable(const OrbitalParams& p, const TwoYukawaParams& pot, double s) {
    return !p.cutoff_a && p.lambda * s >= 80.0 && p.lambda * pot.sigma >= 1.5 * pot.n;
}

double gravitational(double r, const GravParams& p) {
    if (!(r > 0)) throw InputError("distance must be positive");
    return -p.kappa / r;
}

}  // namespace macroloc
