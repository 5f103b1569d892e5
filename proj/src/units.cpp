#include "macroloc/units.hpp"

#include <cmath>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

void require_positive(double x, const char* what) {
    if (!(std::isfinite(x) && x > 0)) throw InputError(std::string(what) + " must be positive and finite");
}

}  // namespace

UnitSystem make_units(double sigma_m, double epsilon_K, double mass_u) {
    require_positive(sigma_m, "sigma");
    require_positive(epsilon_K, "epsilon");
    require_positive(mass_u, "mass");
    UnitSystem u;
    u.sigma_m = sigma_m;
    u.epsilon_K = epsilon_K;
    u.mass_u = mass_u;
    u.coupling = u.hbar_SI * u.hbar_SI / (u.mass_kg() * sigma_m * sigma_m * u.epsilon_J());
    return u;
}

UnitSystem make_krypton_units() { return make_units(3.6e-10, 170.0, 83.798); }

double energy_to_cal_per_mole(const UnitSystem& units, double u) {
    return u * units.epsilon_J() * units.avogadro / codata::calorie;
}

double cal_per_mole_to_energy(const UnitSystem& units, double cal) {
    return cal * codata::calorie / (units.epsilon_J() * units.avogadro);
}

// 1 kbar = 1e8 Pa
double pressure_to_kbar(const UnitSystem& units, double p) {
    const double s3 = units.sigma_m * units.sigma_m * units.sigma_m;
    return p * units.epsilon_J() / s3 / 1e8;
}

double kbar_to_pressure(const UnitSystem& units, double kbar) {
    const double s3 = units.sigma_m * units.sigma_m * units.sigma_m;
    return kbar * 1e8 * s3 / units.epsilon_J();
}

}  // namespace macroloc
