#include "macroloc/selfgrav.hpp"

#include <cmath>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

void check_positive(double x, const char* what) {
    if (!(x > 0) || !std::isfinite(x)) throw InputError(std::string(what) + " must be positive");
}

void check_common(double N, double kappa, double mu, double hbar) {
    if (!(N >= 1) || !std::isfinite(N)) throw InputError("particle number must be at least 1");
    check_positive(kappa, "kappa");
    check_positive(mu, "mass");
    check_positive(hbar, "hbar");
}

}  // namespace

double tf_profile_coefficient() { return 27.0 / 125.0 * std::pow(8 * M_PI, -2.0 / 3.0); }

double boson_energy(double beta, double N, double kappa, double mu, double hbar) {
    check_common(N, kappa, mu, hbar);
    if (!(beta >= 0)) throw InputError("beta must be non-negative");
    return N * hbar * hbar * beta * beta / (2 * mu) - 5 * kappa * N * (N - 1) * beta / 16;
}

BosonSolution boson_solve(double N, double kappa, double mu, double hbar) {
    check_common(N, kappa, mu, hbar);
    if (!(N >= 2)) throw InputError("a self-bound boson cloud needs N >= 2");
    BosonSolution s;
    s.N = N;
    s.g_const = 16 * hbar * hbar / (5 * kappa * mu);
    s.beta_star = 5 * kappa * mu * (N - 1) / (16 * hbar * hbar);
    s.energy = boson_energy(s.beta_star, N, kappa, mu, hbar);
    s.chi = s.g_const * s.g_const / (N * (N - 1) * (N - 1));
    s.omega = N * hbar * hbar * s.beta_star * s.beta_star / 3;
    s.product = std::sqrt(s.chi * s.omega);
    return s;
}

double fermion_tf_energy(double gamma, double N, double q, double kappa, double mu, double e_coeff, double hbar) {
    check_common(N, kappa, mu, hbar);
    check_positive(gamma, "gamma");
    if (!(q >= 1)) throw InputError("occupation number q must be at least 1");
    check_positive(e_coeff, "kinetic coefficient e");
    const double A = e_coeff * hbar * hbar * tf_profile_coefficient() / (std::cbrt(q * q) * mu);
    return A * std::pow(N, 5.0 / 3.0) * gamma * gamma - kTfCoulombCoefficient * kappa * N * N * gamma;
}

FermionSolution fermion_solve(double N, double q, double kappa, double mu, double e_coeff, double hbar) {
    check_common(N, kappa, mu, hbar);
    if (!(N >= 2)) throw InputError("a self-bound fermion cloud needs N >= 2");
    if (!(q >= 1)) throw InputError("occupation number q must be at least 1");
    check_positive(e_coeff, "kinetic coefficient e");
    FermionSolution s;
    s.N = N;
    s.q = q;
    s.e_coeff = e_coeff;
    // a gamma^2 - b gamma is smallest at gamma = b / (2a)
    s.f_factor = 2 * kTfCoulombCoefficient * std::cbrt(q * q) / (4 * e_coeff * tf_profile_coefficient());
    s.gamma_star = s.f_factor * kappa * mu * std::cbrt(N) / (hbar * hbar);
    s.energy = fermion_tf_energy(s.gamma_star, N, q, kappa, mu, e_coeff, hbar);
    s.chi = 4 / (s.gamma_star * s.gamma_star * N);
    return s;
}

}  // namespace macroloc
