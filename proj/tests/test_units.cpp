#include <cmath>

#include "doctest.h"
#include "macroloc/errors.hpp"
#include "macroloc/units.hpp"

using namespace macroloc;

TEST_CASE("krypton coupling from SI constants") {
    const UnitSystem u = make_krypton_units();
    // hbar^2 / (mu sigma^2 k_B T) evaluated by hand
    const double hbar = 1.054571817e-34, kb = 1.380649e-23, amu = 1.66053906660e-27;
    const double expect = hbar * hbar / (83.798 * amu * 3.6e-10 * 3.6e-10 * kb * 170.0);
    CHECK(u.coupling == doctest::Approx(expect).epsilon(1e-14));
    CHECK(u.coupling == doctest::Approx(2.6268e-4).epsilon(1e-3));
}

TEST_CASE("energy and pressure conversions") {
    const UnitSystem u = make_krypton_units();
    // 1 epsilon = k_B 170 K per particle = R 170 K per mole
    CHECK(energy_to_cal_per_mole(u, 1.0) == doctest::Approx(8.314462618 * 170.0 / 4.184).epsilon(1e-9));
    CHECK(pressure_to_kbar(u, 1.0) == doctest::Approx(1.380649e-23 * 170.0 / std::pow(3.6e-10, 3) / 1e8).epsilon(1e-14));
    CHECK(length_to_angstrom(u, 1.0) == doctest::Approx(3.6));
    CHECK(angstrom_to_length(u, 3.953) == doctest::Approx(3.953 / 3.6));
}

TEST_CASE("round trips are identities") {
    const UnitSystem u = make_krypton_units();
    for (double x : {-7.98, 1e-6, 0.5, 67.3, 1e5}) {
        CHECK(std::abs(kbar_to_pressure(u, pressure_to_kbar(u, x)) / x - 1) < 1e-12);
        CHECK(std::abs(cal_per_mole_to_energy(u, energy_to_cal_per_mole(u, x)) / x - 1) < 1e-12);
        CHECK(std::abs(angstrom_to_length(u, length_to_angstrom(u, x)) / x - 1) < 1e-12);
    }
}

TEST_CASE("coupling times lambda^2 is independent of the length unit") {
    // Kinetic energy in epsilon units depends on (lambda / sigma)^2 / (mu sigma^2), i.e. on
    // coupling * lambda^2 with lambda expressed in 1/sigma: rescaling sigma leaves it fixed.
    const UnitSystem a = make_units(3.6e-10, 170, 83.798);
    const UnitSystem b = make_units(7.2e-10, 170, 83.798);
    const double lambda_a = 91.33, lambda_b = 2 * 91.33;  // same physical inverse length
    CHECK(a.coupling * lambda_a * lambda_a == doctest::Approx(b.coupling * lambda_b * lambda_b).epsilon(1e-14));
}

TEST_CASE("bad scales are rejected") {
    CHECK_THROWS_AS(make_units(0, 170, 83.798), InputError);
    CHECK_THROWS_AS(make_units(3.6e-10, -1, 83.798), InputError);
    CHECK_THROWS_AS(make_units(3.6e-10, 170, NAN), InputError);
}
