#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "macroloc/model.hpp"
#include "macroloc/optimize.hpp"
#include "macroloc/units.hpp"

namespace macroloc {

/// Run parameters. Defaults reproduce the Krypton solid, so an empty config
/// is a complete run.
struct RunConfig {
    // two-Yukawa potential and units
    double b = 2.026;
    double m = 2.69;
    double n = 14.70;
    double epsilon_K = 170.0;
    double sigma_A = 3.6;
    double mass_u = 83.798;
    // solid optimizer
    double lambda0 = 50.0;
    double d0 = 1.1;
    double x_rel_tol = 1e-6;
    int max_iterations = 1000;
    double shell_max_distance = kDefaultShellRange;  // multiples of d
    bool far_field_tail = true;
    double quadrature_rel_tol = 1e-10;
    bool relax_lambda = true;
    double fd_step = 1e-2;
    // scaling reports and self-gravitating clouds (natural units, hbar = 1 by default)
    std::vector<double> n_list{1e2, 1e3, 1e4, 1e5, 1e6};
    double grav_kappa = 1.0;
    double grav_mu = 1.0;
    double grav_hbar = 1.0;
    double fermion_q = 2.0;
    double fermion_e = 5.0;
    // Monte Carlo checks
    std::uint64_t seed = 12345;
    std::size_t mc_samples = 200000;
};

/// Flat JSON object, snake_case keys as in RunConfig. Unknown keys, wrong
/// types and out-of-range values throw InputError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);  // empty path: defaults
nlohmann::json to_json(const RunConfig& c);
void validate(const RunConfig& c);

UnitSystem units_of(const RunConfig& c);
TwoYukawaParams potential_of(const RunConfig& c);
SolverOptions solver_of(const RunConfig& c);

}  // namespace macroloc
