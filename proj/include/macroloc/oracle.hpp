#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "macroloc/lattice.hpp"
#include "macroloc/model.hpp"

// Brute-force cross-checks. Nothing here shares a code path with the
// production integrals: quadrature goes through Boost.Math and the Monte Carlo
// sampling is self-contained.
namespace macroloc::oracle {

struct McEstimate {
    double mean = 0;
    double std_error = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Normalized lambda^3 e^{-lambda r} / (8 pi) centred at the origin.
struct ExponentialDensity {
    double lambda = 0;
};

/// Deterministic generator: mt19937_64 feeding hand-written inverse transforms,
/// so streams are reproducible across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed);
    double uniform();              // (0, 1)
    Vec3 unit_vector();
    Vec3 sample(const ExponentialDensity& d);  // radius ~ Gamma(3, 1/lambda)

private:
    std::uint64_t state_[312];
    int index_;
    std::uint64_t next();
};

/// Estimate of int int n_a(r) K(|r - r'|) n_b(r' - s) d^3r d^3r' with s along z.
/// Throws InputError for fewer than 1000 samples.
McEstimate mc_pair_integral(const ExponentialDensity& a, const ExponentialDensity& b,
                            const std::function<double(double)>& kernel, double separation,
                            std::size_t samples, std::uint64_t seed);

/// (4 pi / k) int_0^inf r sin(k r) f(r) dr (4 pi int r^2 f at k = 0), relative tolerance 1e-10.
/// Throws ConvergenceError if the panel sum does not settle.
double radial_transform_check(const std::function<double(double)>& f, double k);

/// 4 pi int_0^inf r^2 f(r) dr
double radial_integral(const std::function<double(double)>& f);

/// int int f(r) f(r') / |r - r'| d^3r d^3r' for a spherical f, by nested radial
/// quadrature through the shell theorem. `scale` is the radius where f has
/// decayed appreciably (splits the outer integral).
double coulomb_self_integral(const std::function<double(double)>& f, double scale);

/// Density of the separation between two independent site particles
/// (self-convolution of the exponential density):
/// lambda^3 e^{-x} (x^2 + 3x + 3) / (192 pi), x = lambda r.
double relative_density(double lambda, double r);

/// Pair energy evaluated in real space: the separation density folded with the
/// shell-averaged potential, using the closed antiderivative of r v(r).
double real_space_pair_energy(double lambda, const TwoYukawaParams& pot, double s);

}  // namespace macroloc::oracle
