#pragma once

#include <vector>

#include "macroloc/lattice.hpp"
#include "macroloc/model.hpp"
#include "macroloc/quadrature.hpp"
#include "macroloc/units.hpp"

namespace macroloc {

struct ShellContribution {
    double distance = 0;
    int coordination = 0;
    double energy = 0;       // (1/2) c_n E_pair(r_n), per particle
    bool far_field = false;  // beyond the supplied shells, closed-form pair energy
};

struct EnergyBreakdown {
    double kinetic = 0;
    std::vector<ShellContribution> potential_shells;
    double potential_total = 0;
    double total = 0;
};

struct EnergyOptions {
    QuadratureOptions quadrature;
    // Adds the lattice sum beyond the last supplied shell using the
    // separated-site form of the pair energy, out to where the remainder
    // drops below tail_tolerance.
    bool far_field_tail = true;
    double tail_tolerance = 1e-16;
};

/// hbar^2 lambda^2 / (8 mu) in epsilon units: coupling * lambda^2 / 8.
double kinetic_per_particle(const OrbitalParams& p, const UnitSystem& units);

/// Average energy per particle of the infinite lattice:
/// kinetic + (1/2) sum_n c_n E_pair(r_n).
EnergyBreakdown energy_per_particle(const OrbitalParams& p, const TwoYukawaParams& pot,
                                    const LatticeShells& shells, const UnitSystem& units,
                                    const EnergyOptions& opts = {});

/// Convenience: FCC shells out to range * d.
EnergyBreakdown energy_per_particle(const OrbitalParams& p, const TwoYukawaParams& pot, double d,
                                    const UnitSystem& units, const EnergyOptions& opts = {},
                                    double range = kDefaultShellRange);

struct SameSitePenalty {
    double W = 0;      // E_pair(0)
    double ratio = 0;  // W / |potential energy per particle|
};

/// Same-site pair energy and its size relative to the interaction energy per
/// particle. Throws InputError if that interaction energy is zero.
SameSitePenalty same_site_W(const OrbitalParams& p, const TwoYukawaParams& pot,
                            double potential_per_particle, const QuadratureOptions& opts = {});

/// Cost of putting `occupancy` particles on one site: p (p - 1) W / 2.
double occupancy_penalty(int occupancy, double W);

}  // namespace macroloc
