#include "macroloc/energy.hpp"

#include <cmath>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

// Radius beyond which the continuum estimate of the attractive tail,
// (rho/2) int_R^inf 4 pi r^2 |v_far(r)| dr, falls below tol.
double tail_radius(const OrbitalParams& p, const TwoYukawaParams& pot, double d, double tol) {
    const double rho = 1.0 / volume_per_site(LatticeKind::FCC, d);
    const double alpha = pot.m / pot.sigma;
    const double q = alpha / p.lambda;
    const double form = std::pow(1.0 - q * q, -4);
    const double amp = pot.epsilon * pot.b * pot.sigma * form * std::exp(pot.m);
    auto remainder = [&](double R) {
        return 0.5 * rho * 4.0 * M_PI * amp * std::exp(-alpha * R) * (R / alpha + 1.0 / (alpha * alpha));
    };
    double R = d;
    while (remainder(R) > tol) R += 0.25 * d;
    return R;
}

}  // namespace

double kinetic_per_particle(const OrbitalParams& p, const UnitSystem& units) {
    validate(p);
    if (p.cutoff_a) throw InputError("kinetic energy is defined for the unbounded orbital only");
    return units.coupling * p.lambda * p.lambda / 8.0;
}

EnergyBreakdown energy_per_particle(const OrbitalParams& p, const TwoYukawaParams& pot,
                                    const LatticeShells& shells, const UnitSystem& units,
                                    const EnergyOptions& opts) {
    validate(p);
    validate(pot);
    if (shells.empty()) throw InputError("energy needs at least one neighbor shell");

    EnergyBreakdown out;
    out.kinetic = kinetic_per_particle(p, units);
    for (const Shell& sh : shells.shells) {
        const double e = 0.5 * sh.coordination * pair_energy(p, pot, sh.distance, opts.quadrature);
        out.potential_shells.push_back({sh.distance, sh.coordination, e, false});
    }

    if (opts.far_field_tail && shells.kind == LatticeKind::FCC && p.lambda * pot.sigma > pot.m) {
        const double last = shells.shells.back().distance;
        const double R = tail_radius(p, pot, shells.spacing_d, opts.tail_tolerance);
        if (R > last) {
            const LatticeShells far = enumerate_shells(shells.kind, shells.spacing_d, R);
            for (const Shell& sh : far.shells) {
                if (sh.distance <= last * (1 + 1e-12)) continue;
                const double pe = far_field_applicable(p, pot, sh.distance)
                                      ? pair_energy_far_field(p, pot, sh.distance)
                                      : pair_energy(p, pot, sh.distance, opts.quadrature);
                out.potential_shells.push_back({sh.distance, sh.coordination, 0.5 * sh.coordination * pe, true});
            }
        }
    }

    for (const auto& c : out.potential_shells) out.potential_total += c.energy;
    out.total = out.kinetic + out.potential_total;
    return out;
}

EnergyBreakdown energy_per_particle(const OrbitalParams& p, const TwoYukawaParams& pot, double d,
                                    const UnitSystem& units, const EnergyOptions& opts, double range) {
    if (!(d > 0) || !std::isfinite(d)) throw InputError("lattice spacing must be positive");
    if (!(range >= 1)) throw InputError("shell range must be at least one spacing");
    return energy_per_particle(p, pot, enumerate_shells(LatticeKind::FCC, d, range * d), units, opts);
}

SameSitePenalty same_site_W(const OrbitalParams& p, const TwoYukawaParams& pot,
                            double potential_per_particle, const QuadratureOptions& opts) {
    SameSitePenalty out;
    out.W = pair_energy(p, pot, 0.0, opts);
    if (potential_per_particle == 0 || !std::isfinite(potential_per_particle))
        throw InputError("W ratio needs a nonzero interaction energy per particle");
    out.ratio = out.W / std::abs(potential_per_particle);
    return out;
}

double occupancy_penalty(int occupancy, double W) {
    if (occupancy < 0) throw InputError("occupancy must be non-negative");
    return 0.5 * occupancy * (occupancy - 1.0) * W;
}

}  // namespace macroloc
