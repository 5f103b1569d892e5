#include <cmath>
#include <complex>

#include "doctest.h"
#include "macroloc/errors.hpp"
#include "macroloc/observables.hpp"
#include "macroloc/oracle.hpp"

using namespace macroloc;

TEST_CASE("centre-of-mass spreads of the product state") {
    const ComStatistics s = com_statistics(91.33, 1e23);
    CHECK(s.chi == doctest::Approx(4.0 / (91.33 * 91.33 * 1e23)).epsilon(1e-15));
    CHECK(s.omega == doctest::Approx(91.33 * 91.33 * 1e23 / 12).epsilon(1e-15));
    CHECK(std::abs(s.product - 1 / std::sqrt(3.0)) <= 1e-12);

    // 1/N and N scaling at fixed lambda
    const ComStatistics t = com_statistics(91.33, 1e24);
    CHECK(s.chi / t.chi == doctest::Approx(10).epsilon(1e-14));
    CHECK(t.omega / s.omega == doctest::Approx(10).epsilon(1e-14));
    for (double lambda : {0.5, 3.0, 1e4})
        for (double N : {1.0, 7.0, 1e10, 1e30}) CHECK(std::abs(com_statistics(lambda, N).product - 1 / std::sqrt(3.0)) <= 1e-12);

    CHECK_THROWS_AS(com_statistics(0, 10), InputError);
    CHECK_THROWS_AS(com_statistics(1, 0.5), InputError);
    CHECK_THROWS_AS(com_statistics(1, INFINITY), InputError);
}

TEST_CASE("Monte Carlo centre-of-mass variance on finite clusters") {
    struct Case {
        double lambda;
        int N;
    };
    for (const Case& c : {Case{3.0, 1}, Case{3.0, 13}, Case{6.0, 13}, Case{2.0, 43}}) {
        const Cluster cl = build_cluster(LatticeKind::FCC, 1.1, c.N);
        const ComCheck chk = verify_com_on_cluster(c.lambda, cl, 40000, 2024);
        CHECK(chk.expected == doctest::Approx(4.0 / (c.lambda * c.lambda * c.N)).epsilon(1e-15));
        CHECK(chk.within_4se);
        CHECK(std::abs(chk.estimate - chk.expected) <= 4 * chk.std_error);
        CHECK(chk.std_error < 0.02 * chk.expected);
    }
    // doubling lambda quarters the variance
    const Cluster cl = build_cluster(LatticeKind::FCC, 1.1, 13);
    const ComCheck a = verify_com_on_cluster(2.0, cl, 40000, 7);
    const ComCheck b = verify_com_on_cluster(4.0, cl, 40000, 7);
    CHECK(a.estimate / b.estimate == doctest::Approx(4).epsilon(1e-12));  // same stream, scaled radii
    CHECK_THROWS_AS(verify_com_on_cluster(2.0, Cluster{}, 1000, 1), InputError);
}

TEST_CASE("galilean boost shifts the mean momentum only") {
    const UnitSystem u = make_krypton_units();
    const ComStatistics s = com_statistics(91.33, 1000);
    const ComStatistics b = galilean_boost(s, {1.0, -2.0, 0.0}, u);
    CHECK(b.chi == s.chi);
    CHECK(b.omega == s.omega);
    CHECK(b.product == s.product);
    const double p = 1000 * u.mass_kg() * 1.0 * u.sigma_m / u.hbar_SI;
    CHECK(b.mean_P[0] == doctest::Approx(p).epsilon(1e-14));
    CHECK(b.mean_P[1] == doctest::Approx(-2 * p).epsilon(1e-14));
    CHECK(b.mean_P[2] == 0);
    // boosts compose
    const ComStatistics bb = galilean_boost(b, {-1.0, 2.0, 0.0}, u);
    CHECK(std::abs(bb.mean_P[0]) <= 1e-12 * p);
    CHECK(std::abs(bb.mean_P[1]) <= 1e-12 * p);
}

TEST_CASE("free spreading of the centre of mass") {
    const UnitSystem u = make_krypton_units();
    const ComStatistics s = com_statistics(91.33, 1000);
    CHECK(free_spread(s, 0, u) == s.chi);
    // chi(t) - chi(0) = Var(P) t^2 / M^2 with everything converted to SI
    const double t = 3e-9;
    const double M = 1000 * u.mass_kg();
    const double varP = s.omega * (u.hbar_SI / u.sigma_m) * (u.hbar_SI / u.sigma_m);
    const double growth_m2 = varP * t * t / (M * M);
    CHECK((free_spread(s, t, u) - s.chi) * u.sigma_m * u.sigma_m == doctest::Approx(growth_m2).epsilon(1e-12));
    CHECK(free_spread(s, 2 * t, u) > free_spread(s, t, u));
    // quadratic growth
    const double g1 = free_spread(s, t, u) - s.chi, g2 = free_spread(s, 2 * t, u) - s.chi;
    CHECK(g2 / g1 == doctest::Approx(4).epsilon(1e-12));
    // at fixed lambda the growth falls as 1/N
    const ComStatistics big = com_statistics(91.33, 1e23), bigger = com_statistics(91.33, 1e24);
    CHECK((free_spread(big, 1, u) - big.chi) / (free_spread(bigger, 1, u) - bigger.chi) == doctest::Approx(10).epsilon(1e-12));
    CHECK_THROWS_AS(free_spread(s, -1, u), InputError);
}

namespace {

SuperpositionSpec two_branches(double L, double a) {
    const double w = 1 / std::sqrt(2.0);
    return SuperpositionSpec{{{-L, 0, 0}, {L, 0, 0}}, {{w, 0}, {0, w}}, a};
}

}  // namespace

TEST_CASE("superposition spread") {
    const double lambda = 91.33, N = 1e6;
    const double intrinsic = 4 / (lambda * lambda * N);
    const Vec3 v = superposition_spread(two_branches(10, 1), lambda, N);
    CHECK(v[0] == doctest::Approx(intrinsic + 100).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(intrinsic).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(intrinsic).epsilon(1e-14));

    // unequal weights: p (1 - p) D^2 along the separation
    const double p = 0.2;
    const SuperpositionSpec s{{{0, 0, 0}, {0, 0, 6}}, {{std::sqrt(p), 0}, {0, std::sqrt(1 - p)}}, 1};
    CHECK(superposition_spread(s, lambda, N)[2] == doctest::Approx(intrinsic + p * (1 - p) * 36).epsilon(1e-13));

    // single branch is the bare state; a common translation changes nothing
    const SuperpositionSpec one{{{1e8, -3, 2}}, {{1, 0}}, 0.5};
    CHECK(superposition_spread(one, lambda, N)[0] == doctest::Approx(intrinsic).epsilon(1e-14));
    SuperpositionSpec three{{{0, 0, 0}, {5, 0, 0}, {0, 7, 0}}, {{0.6, 0}, {0, 0.64}, {0.48, 0}}, 1};
    const Vec3 before = superposition_spread(three, lambda, N);
    for (Vec3& x : three.displacements) {
        x[0] += 1e6;
        x[1] -= 2.5e5;
    }
    const Vec3 after = superposition_spread(three, lambda, N);
    for (int i = 0; i < 3; ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
}

TEST_CASE("superposition validation") {
    CHECK_NOTHROW(validate(two_branches(1.01, 1)));
    CHECK_THROWS_AS(validate(two_branches(1.0, 1)), InputError);   // exactly 2a apart
    CHECK_THROWS_AS(validate(two_branches(0.5, 1)), InputError);
    SuperpositionSpec s = two_branches(5, 1);
    s.weights[0] *= 1.001;
    CHECK_THROWS_AS(validate(s), InputError);
    s = two_branches(5, 1);
    s.weights.pop_back();
    CHECK_THROWS_AS(validate(s), InputError);
    s = two_branches(5, 1);
    s.cutoff_a = 0;
    CHECK_THROWS_AS(validate(s), InputError);
    CHECK_THROWS_AS(validate(SuperpositionSpec{}), InputError);
    CHECK_THROWS_AS(superposition_spread(two_branches(0.5, 1), 91.33, 1e6), InputError);
}

TEST_CASE("branch overlap of truncated orbitals") {
    const double lambda = 2.0, a = 3.0;
    CHECK(branch_overlap(two_branches(4.5, a), lambda) == 0);   // 3a apart
    CHECK(branch_overlap(two_branches(3.0, a), lambda) == 0);   // exactly 2a
    CHECK(branch_overlap(two_branches(2.9, a), lambda) > 0);
    const double close = branch_overlap(two_branches(1.0, a), lambda);
    CHECK(close > 0);
    CHECK(close < 1);
    CHECK(branch_overlap(two_branches(0.5, a), lambda) > close);

    // Monte Carlo: sample |phi|^2 (rejecting r > a) and average phi(r - s) / phi(r)
    const double s = 2.0;
    const double c = lambda / 2;
    oracle::Sampler rng(99);
    const oracle::ExponentialDensity dens{lambda};
    double mean = 0, m2 = 0;
    long n = 0;
    while (n < 400000) {
        const Vec3 r = rng.sample(dens);
        const double r0 = std::hypot(r[0], r[1], r[2]);
        if (r0 > a) continue;
        const double r1 = std::hypot(r[0], r[1], r[2] - s);
        const double x = r1 < a ? std::exp(-c * (r1 - r0)) : 0.0;
        ++n;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }
    const double se = std::sqrt(m2 / (n - 1) / n);
    const SuperpositionSpec spec{{{0, 0, 0}, {0, 0, s}}, {{1, 0}, {0, 0}}, a};
    const double ov = branch_overlap(spec, lambda);
    CHECK(std::abs(ov - mean) <= 4 * se);
    CHECK(se < 0.01 * mean);
}
