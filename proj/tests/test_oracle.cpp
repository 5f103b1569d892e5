#include <cmath>
#include <random>

#include "doctest.h"
#include "macroloc/errors.hpp"
#include "macroloc/oracle.hpp"

using namespace macroloc;
using namespace macroloc::oracle;

TEST_CASE("sampler reproduces the reference mt19937_64 stream") {
    for (std::uint64_t seed : {5489ULL, 0ULL, 12345ULL}) {
        Sampler s(seed);
        std::mt19937_64 ref(seed);
        for (int i = 0; i < 2000; ++i) {
            const double u = s.uniform();
            CHECK(u == (static_cast<double>(ref() >> 11) + 0.5) * 0x1.0p-53);
        }
    }
    Sampler a(1), b(1);
    for (int i = 0; i < 100; ++i) CHECK(a.sample({2.0}) == b.sample({2.0}));
}

TEST_CASE("sampled radii follow the exponential density") {
    Sampler s(3);
    const double lambda = 2.5;
    double m1 = 0, m2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const Vec3 x = s.sample({lambda});
        const double r = std::hypot(x[0], x[1], x[2]);
        m1 += r;
        m2 += x[2] * x[2];
    }
    CHECK(m1 / n == doctest::Approx(3 / lambda).epsilon(0.01));
    CHECK(m2 / n == doctest::Approx(4 / (lambda * lambda)).epsilon(0.02));
}

TEST_CASE("Monte Carlo pair integral") {
    auto one = [](double) { return 1.0; };
    const McEstimate c = mc_pair_integral({1.0}, {3.0}, one, 0.7, 5000, 1);
    CHECK(c.mean == 1.0);
    CHECK(c.std_error == 0.0);

    auto coul = [](double r) { return 1 / r; };
    const McEstimate a = mc_pair_integral({2.0}, {2.0}, coul, 0, 40000, 11);
    const McEstimate b = mc_pair_integral({2.0}, {2.0}, coul, 0, 160000, 11);
    CHECK(a.std_error / b.std_error == doctest::Approx(2).epsilon(0.2));
    CHECK(std::abs(b.mean - 5 * 2.0 / 16) <= 4 * b.std_error);

    // far apart the kernel sees point charges
    const McEstimate far = mc_pair_integral({4.0}, {4.0}, coul, 40, 20000, 2);
    CHECK(far.mean == doctest::Approx(1.0 / 40).epsilon(1e-3));

    const McEstimate again = mc_pair_integral({2.0}, {2.0}, coul, 0, 40000, 11);
    CHECK(again.mean == a.mean);
    CHECK(again.seed == 11);
    CHECK_THROWS_AS(mc_pair_integral({2.0}, {2.0}, coul, 0, 999, 11), InputError);
    CHECK_THROWS_AS(mc_pair_integral({0.0}, {2.0}, coul, 0, 5000, 11), InputError);
}

TEST_CASE("radial transform of known functions") {
    // Yukawa e^{-a r} / r -> 4 pi / (k^2 + a^2)
    const double alpha = 1.3;
    auto yuk = [&](double r) { return std::exp(-alpha * r) / r; };
    for (double k : {0.0, 0.1, 1.0, 7.0, 50.0})
        CHECK(radial_transform_check(yuk, k) == doctest::Approx(4 * M_PI / (k * k + alpha * alpha)).epsilon(1e-9));

    // narrow Gaussian: pi^{3/2} w^3 e^{-k^2 w^2 / 4}
    const double w = 0.05;
    auto gauss = [&](double r) { return std::exp(-r * r / (w * w)); };
    for (double k : {0.0, 10.0, 40.0})
        CHECK(radial_transform_check(gauss, k) ==
              doctest::Approx(std::pow(M_PI, 1.5) * w * w * w * std::exp(-k * k * w * w / 4)).epsilon(1e-9));

    // normalized density -> (1 + k^2 / lambda^2)^{-2}
    const double lambda = 4.0;
    auto dens = [&](double r) { return lambda * lambda * lambda * std::exp(-lambda * r) / (8 * M_PI); };
    for (double k : {0.0, 2.0, 30.0}) {
        const double q = 1 + k * k / (lambda * lambda);
        CHECK(radial_transform_check(dens, k) == doctest::Approx(1 / (q * q)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(radial_transform_check(dens, -1), InputError);
}

TEST_CASE("relative density is a normalized convolution") {
    const double lambda = 3.0;
    CHECK(radial_integral([&](double r) { return relative_density(lambda, r); }) == doctest::Approx(1).epsilon(1e-12));
    // <r^2> of the difference of two independent particles is twice 12 / lambda^2
    CHECK(radial_integral([&](double r) { return r * r * relative_density(lambda, r); }) ==
          doctest::Approx(24 / (lambda * lambda)).epsilon(1e-12));
}

TEST_CASE("coulomb self integral of a gaussian cloud") {
    // unit charge with per-axis variance w^2: 1 / (w sqrt(pi))
    const double w = 0.6;
    auto cloud = [&](double r) { return std::exp(-r * r / (2 * w * w)) / std::pow(2 * M_PI * w * w, 1.5); };
    CHECK(coulomb_self_integral(cloud, w) == doctest::Approx(1 / (w * std::sqrt(M_PI))).epsilon(1e-10));
    CHECK_THROWS_AS(coulomb_self_integral(cloud, 0), InputError);
}
