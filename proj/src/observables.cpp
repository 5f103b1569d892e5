#include "macroloc/observables.hpp"

#include <cmath>

#include "macroloc/errors.hpp"
#include "macroloc/model.hpp"
#include "macroloc/oracle.hpp"
#include "macroloc/quadrature.hpp"

namespace macroloc {

namespace {

void check_lambda_N(double lambda, double N) {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
    if (!(N >= 1) || !std::isfinite(N)) throw InputError("particle number must be at least 1");
}

double distance(const Vec3& a, const Vec3& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

// Overlap of two orbitals D e^{-lambda r / 2} truncated at a, centres s apart.
// Bipolar coordinates: (2 pi / s) int r1 r2 phi(r1) phi(r2) over the triangle
// |r1 - r2| <= s <= r1 + r2; the inner r2 integral is closed.
double pair_overlap(double lambda, double a, double s) {
    if (s >= 2 * a) return 0;
    const double D2 = orbital_norm_constant(OrbitalParams{lambda, a});
    const double c = 0.5 * lambda;
    auto prim = [c](double r) { return -std::exp(-c * r) * (r / c + 1 / (c * c)); };  // int r e^{-c r}
    if (s == 0) return 1.0;
    auto outer = [&](long double r1l) -> long double {
        const double r1 = static_cast<double>(r1l);
        const double lo = std::abs(s - r1), hi = std::min(a, s + r1);
        if (hi <= lo) return 0;
        return r1 * std::exp(-c * r1) * (prim(hi) - prim(lo));
    };
    QuadratureOptions o;
    o.rel_tol = 1e-12;
    const QuadratureResult r = integrate_gk(outer, std::max(0.0, s - a), a, o);
    return 2 * M_PI / s * D2 * require_converged(r, "branch_overlap");
}

}  // namespace

ComStatistics com_statistics(double lambda, double N) {
    check_lambda_N(lambda, N);
    ComStatistics st;
    st.N = N;
    st.chi = 4.0 / (lambda * lambda * N);
    st.omega = lambda * lambda * N / 12.0;
    st.product = std::sqrt(st.chi * st.omega);
    return st;
}

ComCheck verify_com_on_cluster(double lambda, const Cluster& cluster, std::size_t samples, std::uint64_t seed) {
    if (cluster.sites.empty()) throw InputError("cluster has no sites");
    if (samples < 2) throw InputError("need at least two samples");
    check_lambda_N(lambda, static_cast<double>(cluster.sites.size()));
    const double N = static_cast<double>(cluster.sites.size());
    oracle::Sampler rng(seed);
    const oracle::ExponentialDensity dens{lambda};
    // Welford over the per-sample axis average of R_i^2 (the cluster is centred).
    double mean = 0, m2 = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        Vec3 R{0, 0, 0};
        for (const Vec3& x : cluster.sites) {
            const Vec3 r = rng.sample(dens);
            for (int i = 0; i < 3; ++i) R[i] += x[i] + r[i];
        }
        double q = 0;
        for (int i = 0; i < 3; ++i) q += (R[i] / N) * (R[i] / N);
        q /= 3;
        const double delta = q - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (q - mean);
    }
    ComCheck out;
    out.estimate = mean;
    out.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    out.expected = 4.0 / (lambda * lambda * N);
    out.samples = samples;
    out.seed = seed;
    out.within_4se = std::abs(out.estimate - out.expected) <= 4 * out.std_error;
    return out;
}

ComStatistics galilean_boost(const ComStatistics& stats, const Vec3& v, const UnitSystem& units) {
    ComStatistics out = stats;
    // momentum in hbar / sigma
    const double scale = stats.N * units.mass_kg() * units.sigma_m / units.hbar_SI;
    for (int i = 0; i < 3; ++i) out.mean_P[i] = stats.mean_P[i] + scale * v[i];
    return out;
}

double free_spread(const ComStatistics& stats, double t, const UnitSystem& units) {
    if (!(t >= 0) || !std::isfinite(t)) throw InputError("time must be non-negative");
    // velocity spread sqrt(omega) hbar / (sigma N mu), converted to sigma per second
    const double rate = units.hbar_SI / (stats.N * units.mass_kg() * units.sigma_m * units.sigma_m);
    return stats.chi + stats.omega * (rate * t) * (rate * t);
}

void validate(const SuperpositionSpec& spec) {
    if (spec.displacements.empty()) throw InputError("superposition needs at least one branch");
    if (spec.displacements.size() != spec.weights.size())
        throw InputError("superposition displacements and weights differ in length");
    if (!(spec.cutoff_a > 0) || !std::isfinite(spec.cutoff_a)) throw InputError("orbital cutoff a must be positive");
    double norm = 0;
    for (const auto& c : spec.weights) norm += std::norm(c);
    if (!(std::abs(norm - 1) <= 1e-12)) throw InputError("superposition weights must satisfy sum |c|^2 = 1");
    const auto& a = spec.displacements;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (!(distance(a[i], a[j]) > 2 * spec.cutoff_a))
                throw InputError("superposition branches overlap: separation must exceed 2a");
}

Vec3 superposition_spread(const SuperpositionSpec& spec, double lambda, double N) {
    validate(spec);
    check_lambda_N(lambda, N);
    const double intrinsic = 4.0 / (lambda * lambda * N);
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        // shift by the first branch so the mixture variance is formed from small numbers
        const double ref = spec.displacements[0][i];
        double m1 = 0, m2 = 0;
        for (std::size_t k = 0; k < spec.weights.size(); ++k) {
            const double w = std::norm(spec.weights[k]);
            const double x = spec.displacements[k][i] - ref;
            m1 += w * x;
            m2 += w * x * x;
        }
        out[i] = intrinsic + m2 - m1 * m1;
    }
    return out;
}

double branch_overlap(const SuperpositionSpec& spec, double lambda) {
    if (!(spec.cutoff_a > 0)) throw InputError("branch overlap needs a finite cutoff");
    double worst = 0;
    const auto& a = spec.displacements;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            worst = std::max(worst, pair_overlap(lambda, spec.cutoff_a, distance(a[i], a[j])));
    return worst;
}

}  // namespace macroloc
