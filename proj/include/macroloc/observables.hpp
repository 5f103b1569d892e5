#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "macroloc/lattice.hpp"
#include "macroloc/units.hpp"

namespace macroloc {

/// Center-of-mass statistics of the product state. Lengths in sigma, momenta
/// in hbar/sigma, the product in hbar.
struct ComStatistics {
    double chi = 0;      // per-axis Var(R)
    double omega = 0;    // per-axis Var(P)
    double product = 0;  // sqrt(chi omega)
    double N = 0;
    Vec3 mean_R{0, 0, 0};
    Vec3 mean_P{0, 0, 0};
};

/// chi = 4 / (lambda^2 N), omega = lambda^2 N / 12. N may be macroscopic, hence double.
ComStatistics com_statistics(double lambda, double N);

struct ComCheck {
    double estimate = 0;   // Monte Carlo per-axis Var(R)
    double std_error = 0;
    double expected = 0;   // 4 / (lambda^2 N)
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool within_4se = false;
};

/// Samples every particle from its site density and measures Var(R) per axis.
ComCheck verify_com_on_cluster(double lambda, const Cluster& cluster, std::size_t samples, std::uint64_t seed);

/// Adds N mu v to the mean momentum; v in m/s. Spreads are unchanged.
ComStatistics galilean_boost(const ComStatistics& stats, const Vec3& v_m_per_s, const UnitSystem& units);

/// chi(t) = chi(0) + omega t^2 / (N mu)^2, t in seconds, result in sigma^2.
/// Assumes no initial correlation between R and P, true for the real product state.
double free_spread(const ComStatistics& stats, double t_seconds, const UnitSystem& units);

struct SuperpositionSpec {
    std::vector<Vec3> displacements;               // sigma
    std::vector<std::complex<double>> weights;
    double cutoff_a = 0;                           // sigma
};

/// Rejects empty or mismatched lists, weights not normalized to 1e-12, a non-positive
/// cutoff, and any two displacements closer than or equal to 2a.
void validate(const SuperpositionSpec& spec);

/// Per-axis Var(R) of the translated superposition: intrinsic 4/(lambda^2 N)
/// plus the variance of the displacement mixture. Cross terms vanish because the
/// branches do not overlap.
Vec3 superposition_spread(const SuperpositionSpec& spec, double lambda, double N);

/// Largest overlap integral of one truncated orbital with a translated copy, over
/// all branch pairs. Zero once every separation is at least 2a. Does not validate.
double branch_overlap(const SuperpositionSpec& spec, double lambda);

}  // namespace macroloc
