#pragma once

#include <optional>

#include "macroloc/quadrature.hpp"

namespace macroloc {

/// Site orbital phi(r) = D exp(-lambda |r - x_i| / 2) for |r - x_i| <= a, zero beyond.
/// The density |phi|^2 therefore decays with exponent lambda.
struct OrbitalParams {
    double lambda = 0;               // 1/sigma
    std::optional<double> cutoff_a;  // sigma; empty means a = infinity
};

/// v(r) = -eps b [exp(-m (r/s - 1)) - exp(-n (r/s - 1))] / (r/s)
struct TwoYukawaParams {
    double epsilon = 1;
    double sigma = 1;
    double b = 2.026;
    double m = 2.69;
    double n = 14.70;
};

struct GravParams {
    double kappa = 0;
};

void validate(const OrbitalParams& p);
void validate(const TwoYukawaParams& p);
void validate(const GravParams& p);

/// D^2 such that the orbital is normalized.
double orbital_norm_constant(const OrbitalParams& p);

/// Normalized single-site density |phi|^2 at distance r from its site.
double orbital_density(const OrbitalParams& p, double r);

/// 3-D Fourier transform of the normalized density lambda^3 e^{-lambda r} / (8 pi):
/// (1 + (k/lambda)^2)^-2. Requires an unbounded orbital.
double density_fourier(const OrbitalParams& p, double k);

double two_yukawa(double r, const TwoYukawaParams& p);

/// Closed-form 3-D transform of two_yukawa.
double two_yukawa_fourier(double k, const TwoYukawaParams& p);

/// Spherical Bessel j0(x) = sin(x)/x with a series branch near zero.
double sph_j0(double x);

/// Interaction of two site densities separated by s:
///   (1 / 2 pi^2) int_0^inf k^2 v~(k) n~(k)^2 j0(k s) dk.
/// Throws ConvergenceError if the quadrature does not meet its tolerance.
double pair_energy(const OrbitalParams& p, const TwoYukawaParams& pot, double s,
                   const QuadratureOptions& opts = {});

/// Same integral with the full quadrature record.
QuadratureResult pair_energy_detailed(const OrbitalParams& p, const TwoYukawaParams& pot, double s,
                                      const QuadratureOptions& opts = {});

/// Pair energy of two well separated sites: each Yukawa term seen through the
/// density form factor, n~(i alpha)^2 e^{-alpha s}/s with n~(i alpha) = (1 - alpha^2/lambda^2)^-2.
/// Omits corrections of order exp(-lambda s); see far_field_applicable.
double pair_energy_far_field(const OrbitalParams& p, const TwoYukawaParams& pot, double s);
/// True when the omitted overlap terms are below double precision: lambda s >= 80
/// and lambda comfortably above both Yukawa exponents.
bool far_field_applicable(const OrbitalParams& p, const TwoYukawaParams& pot, double s);

/// -kappa / r
double gravitational(double r, const GravParams& p);

}  // namespace macroloc
