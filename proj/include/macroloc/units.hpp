#pragma once

namespace macroloc {

// CODATA 2018 exact / recommended values.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double boltzmann = 1.380649e-23;    // J/K
inline constexpr double amu = 1.66053906660e-27;     // kg
inline constexpr double avogadro = 6.02214076e23;    // 1/mol
inline constexpr double calorie = 4.184;             // J (thermochemical)
}  // namespace codata

/// Natural units used throughout the library: length sigma, energy epsilon,
/// mass mu. SI enters only through the conversions below.
struct UnitSystem {
    double sigma_m = 0;     // length unit in meters
    double epsilon_K = 0;   // well depth in Kelvin
    double mass_u = 0;      // particle mass in u
    double hbar_SI = codata::hbar;
    double kB_SI = codata::boltzmann;
    double amu_SI = codata::amu;
    double avogadro = codata::avogadro;
    double coupling = 0;    // hbar^2 / (mu sigma^2 epsilon), dimensionless

    double epsilon_J() const { return kB_SI * epsilon_K; }
    double mass_kg() const { return mass_u * amu_SI; }
};

/// Builds a unit system and its dimensionless coupling. Throws InputError
/// unless all three scales are positive and finite.
UnitSystem make_units(double sigma_m, double epsilon_K, double mass_u);

/// Krypton: sigma = 3.6 A, epsilon = 170 K, mass = 83.798 u.
UnitSystem make_krypton_units();

double energy_to_cal_per_mole(const UnitSystem& units, double u);
double cal_per_mole_to_energy(const UnitSystem& units, double cal);

double pressure_to_kbar(const UnitSystem& units, double p);
double kbar_to_pressure(const UnitSystem& units, double kbar);

inline double length_to_angstrom(const UnitSystem& units, double x) { return x * units.sigma_m * 1e10; }
inline double angstrom_to_length(const UnitSystem& units, double a) { return a * 1e-10 / units.sigma_m; }

}  // namespace macroloc
