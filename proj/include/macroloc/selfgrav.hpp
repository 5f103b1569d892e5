#pragma once

namespace macroloc {

/// Coefficient of gamma^2 N^{5/3} in int rho^{5/3} d^3r for rho = N gamma^3 e^{-gamma r} / (8 pi):
/// (27/125) (8 pi)^{-2/3}.
double tf_profile_coefficient();

/// Gravitational self-energy coefficient: (1/2) int int rho rho' / |r - r'| = (5/32) gamma N^2
/// for the same profile.
inline constexpr double kTfCoulombCoefficient = 5.0 / 32.0;

struct BosonSolution {
    double N = 0;
    double beta_star = 0;  // orbital e^{-beta r}
    double energy = 0;
    double chi = 0;        // per-axis CoM position variance
    double omega = 0;      // per-axis CoM momentum variance, N hbar^2 beta^2 / 3
    double product = 0;    // sqrt(chi omega)
    double g_const = 0;    // 16 hbar^2 / (5 kappa mu)
};

struct FermionSolution {
    double N = 0;
    double gamma_star = 0;  // density e^{-gamma r}
    double f_factor = 0;    // gamma_star = f kappa mu N^{1/3} / hbar^2
    double energy = 0;
    double chi = 0;
    double q = 2;
    double e_coeff = 5;
};

/// N hbar^2 beta^2 / (2 mu) - 5 kappa N (N - 1) beta / 16
double boson_energy(double beta, double N, double kappa, double mu, double hbar = 1);

/// beta* = 5 kappa mu (N - 1) / (16 hbar^2); chi = g^2 / (N (N - 1)^2). Rejects N < 2.
BosonSolution boson_solve(double N, double kappa, double mu, double hbar = 1);

/// A N^{5/3} gamma^2 - (5/32) kappa N^2 gamma with A = e hbar^2 C / (q^{2/3} mu),
/// C = tf_profile_coefficient().
double fermion_tf_energy(double gamma, double N, double q, double kappa, double mu, double e_coeff = 5,
                         double hbar = 1);

/// Minimizer of fermion_tf_energy; chi = 4 / (gamma*^2 N). Rejects N < 2.
FermionSolution fermion_solve(double N, double q, double kappa, double mu, double e_coeff = 5, double hbar = 1);

}  // namespace macroloc
