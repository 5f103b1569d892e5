#include "macroloc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "macroloc/energy.hpp"
#include "macroloc/errors.hpp"
#include "macroloc/lattice.hpp"
#include "macroloc/model.hpp"
#include "macroloc/optimize.hpp"
#include "macroloc/oracle.hpp"
#include "macroloc/selfgrav.hpp"

namespace macroloc {

using nlohmann::json;

namespace {

// Reference variational optimum and the measured solid at 0 K.
constexpr double kRefLambda = 91.33;
constexpr double kRefDAngstrom = 3.953;
constexpr double kRefUCal = -2690.0;
constexpr double kRefBKbar = 33.4;
constexpr double kExpDAngstrom = 3.992;
constexpr double kExpUCal = -2666.0;
constexpr double kExpBKbar = 34.3;

double rel_dev(double x, double ref) { return (x - ref) / std::abs(ref); }

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json check(const std::string& name, double value, double reference, double tolerance, bool pass,
           const std::string& criterion) {
    return json{{"name", name},           {"value", value},   {"reference", reference},
                {"tolerance", tolerance}, {"criterion", criterion}, {"pass", pass}};
}

json rel_check(const std::string& name, double value, double reference, double tol) {
    const double rd = std::abs(value - reference) / std::abs(reference);
    return check(name, value, reference, tol, rd <= tol, "relative");
}

json abs_check(const std::string& name, double value, double reference, double tol) {
    return check(name, value, reference, tol, std::abs(value - reference) <= tol, "absolute");
}

json se_check(const std::string& name, const oracle::McEstimate& mc, double reference, double n_se) {
    json j = check(name, mc.mean, reference, n_se, std::abs(mc.mean - reference) <= n_se * mc.std_error,
                   "standard errors");
    j["std_error"] = mc.std_error;
    j["samples"] = mc.samples;
    j["seed"] = mc.seed;
    return j;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << num17(row[i]);
        os << '\n';
    }
    return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("slope needs two or more matching points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

SuperpositionInput parse_superposition(const json& j) {
    SuperpositionInput in;
    try {
        if (!j.is_object()) throw InputError("superposition spec must be a JSON object");
        in.lambda = j.at("lambda").get<double>();
        in.N = j.at("N").get<double>();
        in.spec.cutoff_a = j.at("cutoff_a").get<double>();
        for (const auto& br : j.at("branches")) {
            const auto& a = br.at("displacement");
            if (!a.is_array() || a.size() != 3) throw InputError("branch displacement needs three components");
            in.spec.displacements.push_back({a[0].get<double>(), a[1].get<double>(), a[2].get<double>()});
            const auto& w = br.at("weight");
            if (w.is_array()) {
                if (w.size() != 2) throw InputError("complex weight must be [re, im]");
                in.spec.weights.emplace_back(w[0].get<double>(), w[1].get<double>());
            } else {
                in.spec.weights.emplace_back(w.get<double>(), 0.0);
            }
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed superposition spec: ") + e.what());
    }
    validate(in.spec);
    return in;
}

CommandOutput cmd_optimize(const RunConfig& cfg) {
    validate(cfg);
    const UnitSystem units = units_of(cfg);
    const TwoYukawaParams pot = potential_of(cfg);
    const SolverOptions opts = solver_of(cfg);
    const SolidSolution sol = solve_solid(pot, units, opts);

    const OrbitalParams orb{sol.lambda_star, std::nullopt};
    const EnergyBreakdown eb = energy_per_particle(orb, pot, sol.d_star, units, opts.energy, opts.shell_range);
    const SameSitePenalty w = same_site_W(orb, pot, eb.potential_total, opts.energy.quadrature);

    CommandOutput out;
    json& j = out.json;
    j["command"] = "optimize";
    j["config"] = to_json(cfg);
    j["lambda_star"] = sol.lambda_star;
    j["d_star_sigma"] = sol.d_star;
    j["d_star_angstrom"] = sol.d_star_angstrom;
    j["u_min_epsilon"] = sol.u_min;
    j["U_cal_per_mole"] = sol.u_cal_per_mole;
    j["kinetic_epsilon"] = eb.kinetic;
    j["potential_epsilon"] = eb.potential_total;
    j["B_epsilon_per_sigma3"] = sol.bulk_modulus;
    j["B_kbar"] = sol.bulk_modulus_kbar;
    j["B_half_step_kbar"] = pressure_to_kbar(units, sol.bulk.half_step_value);
    j["B_step_rel_difference"] = sol.bulk.rel_difference;
    j["B_reduced_confidence"] = sol.bulk.reduced_confidence;
    j["B_relaxed_lambda"] = opts.relax_lambda;
    j["W_epsilon"] = w.W;
    j["W_ratio"] = w.ratio;
    j["convergence"] = {{"iterations", sol.iterations},
                        {"evaluations", sol.evaluations},
                        {"simplex_ln_lambda", sol.simplex_ln_lambda},
                        {"simplex_d_sigma", sol.simplex_d}};
    j["comparison"] = {
        {"reference", {{"lambda", kRefLambda}, {"d_angstrom", kRefDAngstrom}, {"U_cal_per_mole", kRefUCal},
                       {"B_kbar", kRefBKbar}}},
        {"experiment", {{"d_angstrom", kExpDAngstrom}, {"U_cal_per_mole", kExpUCal}, {"B_kbar", kExpBKbar}}},
        {"rel_dev_reference",
         {{"lambda", rel_dev(sol.lambda_star, kRefLambda)},
          {"d_angstrom", rel_dev(sol.d_star_angstrom, kRefDAngstrom)},
          {"U_cal_per_mole", rel_dev(sol.u_cal_per_mole, kRefUCal)},
          {"B_kbar", rel_dev(sol.bulk_modulus_kbar, kRefBKbar)}}},
        {"rel_dev_experiment",
         {{"d_angstrom", rel_dev(sol.d_star_angstrom, kExpDAngstrom)},
          {"U_cal_per_mole", rel_dev(sol.u_cal_per_mole, kExpUCal)},
          {"B_kbar", rel_dev(sol.bulk_modulus_kbar, kExpBKbar)}}}};

    Table t;
    t.columns = {"distance_sigma", "coordination", "energy_epsilon", "far_field"};
    for (const auto& c : eb.potential_shells)
        t.rows.push_back({c.distance, static_cast<double>(c.coordination), c.energy, c.far_field ? 1.0 : 0.0});
    out.table = std::move(t);
    return out;
}

CommandOutput cmd_observables(const RunConfig& cfg, double lambda, double N) {
    validate(cfg);
    const UnitSystem units = units_of(cfg);
    const ComStatistics st = com_statistics(lambda, N);
    CommandOutput out;
    json& j = out.json;
    j["command"] = "observables";
    j["lambda"] = lambda;
    j["N"] = N;
    j["chi_sigma2"] = st.chi;
    j["chi_angstrom2"] = st.chi * cfg.sigma_A * cfg.sigma_A;
    j["omega_hbar2_per_sigma2"] = st.omega;
    j["product_hbar"] = st.product;
    // d chi / d(t^2) in sigma^2 per s^2
    j["spread_growth_sigma2_per_s2"] = free_spread(st, 1.0, units) - st.chi;
    j["velocity_spread_m_per_s"] =
        std::sqrt(st.omega) * units.hbar_SI / (units.sigma_m * N * units.mass_kg());
    j["mean_R"] = st.mean_R;
    j["mean_P"] = st.mean_P;
    return out;
}

CommandOutput cmd_superposition(const RunConfig& cfg, const SuperpositionInput& in) {
    validate(cfg);
    const Vec3 var = superposition_spread(in.spec, in.lambda, in.N);
    CommandOutput out;
    json& j = out.json;
    j["command"] = "superposition";
    j["lambda"] = in.lambda;
    j["N"] = in.N;
    j["cutoff_a"] = in.spec.cutoff_a;
    j["branches"] = in.spec.displacements.size();
    j["intrinsic_chi_sigma2"] = com_statistics(in.lambda, in.N).chi;
    j["variance_sigma2"] = var;
    j["branch_overlap"] = branch_overlap(in.spec, in.lambda);
    // Disjoint branches: no cross terms, so the mean energy and mean momentum are those of one branch.
    j["energy_unchanged"] = true;
    j["mean_P"] = Vec3{0, 0, 0};
    return out;
}

CommandOutput cmd_selfgrav(const RunConfig& cfg, const std::string& kind, const std::vector<double>& N_list) {
    validate(cfg);
    const std::vector<double>& Ns = N_list.empty() ? cfg.n_list : N_list;
    CommandOutput out;
    json& j = out.json;
    j["command"] = "selfgrav";
    j["kind"] = kind;
    j["kappa"] = cfg.grav_kappa;
    j["mu"] = cfg.grav_mu;
    j["hbar"] = cfg.grav_hbar;
    Table t;
    std::vector<double> chis;
    if (kind == "boson") {
        t.columns = {"N", "beta_star", "energy", "chi", "omega", "product"};
        for (double N : Ns) {
            const BosonSolution s = boson_solve(N, cfg.grav_kappa, cfg.grav_mu, cfg.grav_hbar);
            t.rows.push_back({N, s.beta_star, s.energy, s.chi, s.omega, s.product});
            chis.push_back(s.chi);
        }
        j["g_const"] = boson_solve(2, cfg.grav_kappa, cfg.grav_mu, cfg.grav_hbar).g_const;
    } else if (kind == "fermion") {
        t.columns = {"N", "gamma_star", "f_factor", "energy", "chi"};
        for (double N : Ns) {
            const FermionSolution s =
                fermion_solve(N, cfg.fermion_q, cfg.grav_kappa, cfg.grav_mu, cfg.fermion_e, cfg.grav_hbar);
            t.rows.push_back({N, s.gamma_star, s.f_factor, s.energy, s.chi});
            chis.push_back(s.chi);
        }
        j["q"] = cfg.fermion_q;
        j["e_coeff"] = cfg.fermion_e;
        j["C_kin"] = tf_profile_coefficient();
    } else {
        throw InputError("selfgrav kind must be 'boson' or 'fermion'");
    }
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i]] = r[i];
        rows.push_back(row);
    }
    j["rows"] = rows;
    if (Ns.size() >= 2) j["chi_loglog_slope"] = loglog_slope(Ns, chis);
    out.table = std::move(t);
    return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg, const std::string& param, double lo, double hi, int count,
                        double fixed) {
    validate(cfg);
    if (param != "lambda" && param != "d") throw InputError("sweep param must be 'lambda' or 'd'");
    if (count < 1) throw InputError("sweep needs at least one point");
    if (!(lo > 0) || !(hi >= lo)) throw InputError("sweep range must satisfy 0 < lo <= hi");
    if (!(fixed > 0)) throw InputError("sweep fixed coordinate must be positive");
    const UnitSystem units = units_of(cfg);
    const TwoYukawaParams pot = potential_of(cfg);
    const SolverOptions opts = solver_of(cfg);

    Table t;
    t.columns = {"lambda", "d_sigma", "kinetic_epsilon", "potential_epsilon", "total_epsilon", "total_cal_per_mole"};
    for (int i = 0; i < count; ++i) {
        const double x = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
        const double lambda = param == "lambda" ? x : fixed;
        const double d = param == "d" ? x : fixed;
        const EnergyBreakdown e =
            energy_per_particle(OrbitalParams{lambda, std::nullopt}, pot, d, units, opts.energy, opts.shell_range);
        t.rows.push_back({lambda, d, e.kinetic, e.potential_total, e.total, energy_to_cal_per_mole(units, e.total)});
    }
    CommandOutput out;
    out.json["command"] = "sweep";
    out.json["param"] = param;
    out.json["fixed"] = fixed;
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i]] = r[i];
        rows.push_back(row);
    }
    out.json["rows"] = rows;
    out.table = std::move(t);
    return out;
}

CommandOutput cmd_verify(const RunConfig& cfg) {
    validate(cfg);
    const UnitSystem units = units_of(cfg);
    const TwoYukawaParams pot = potential_of(cfg);
    const double lam = kRefLambda;
    const double d = kRefDAngstrom / cfg.sigma_A;
    const OrbitalParams orb{lam, std::nullopt};
    oracle::Sampler pick(cfg.seed);
    json checks = json::array();

    // transforms against direct radial sine quadrature
    for (double k : {0.0, 10.0, lam, 300.0}) {
        const double q = oracle::radial_transform_check([&](double r) { return orbital_density(orb, r); }, k);
        checks.push_back(rel_check("density_fourier k=" + num17(k), density_fourier(orb, k), q, 1e-10));
    }
    for (int i = 0; i < 20; ++i) {
        const double k = 50.0 * pick.uniform();
        const double q = oracle::radial_transform_check([&](double r) { return two_yukawa(r, pot); }, k);
        checks.push_back(rel_check("two_yukawa_fourier k=" + num17(k), two_yukawa_fourier(k, pot), q, 1e-9));
    }

    // pair energy: Fourier route against the real-space fold and the separated-site form
    for (double s : {0.0, 0.5, d, std::sqrt(2.0) * d, 2 * d, 3 * d}) {
        const double e = pair_energy(orb, pot, s);
        const double r = oracle::real_space_pair_energy(lam, pot, s);
        checks.push_back(abs_check("pair_energy real-space s=" + num17(s), e, r, 1e-10 * std::max(1.0, std::abs(r))));
    }
    checks.push_back(abs_check("pair_energy far-field s=d", pair_energy(orb, pot, d),
                               pair_energy_far_field(orb, pot, d), 1e-10));
    {
        const auto mc = oracle::mc_pair_integral({lam}, {lam}, [&](double r) { return two_yukawa(r, pot); }, d,
                                                 cfg.mc_samples, cfg.seed + 1);
        checks.push_back(se_check("pair_energy Monte Carlo s=d", mc, pair_energy(orb, pot, d), 3));
    }

    // Plancherel: (1 / 2 pi^2) int k^2 n~^2 dk = int n^2 d^3r = lambda^3 / (64 pi)
    {
        const QuadratureResult r = integrate_semi_infinite(
            [&](long double k) {
                const double nk = density_fourier(orb, static_cast<double>(k));
                return k * k * nk * nk / (2 * M_PI * M_PI);
            },
            lam);
        checks.push_back(rel_check("plancherel", r.value, lam * lam * lam / (64 * M_PI), 1e-9));
    }

    // kinetic energy against (hbar^2 / 2 mu) int |grad phi|^2
    {
        const double q = oracle::radial_integral([&](double r) { return lam * lam / 4 * orbital_density(orb, r); });
        checks.push_back(rel_check("kinetic", kinetic_per_particle(orb, units), 0.5 * units.coupling * q, 1e-10));
    }

    // self-gravity coefficients pinned by quadrature (unit gamma)
    {
        auto rho = [](double r) { return std::exp(-r) / (8 * M_PI); };
        const double ckin = oracle::radial_integral([&](double r) { return std::pow(rho(r), 5.0 / 3.0); });
        checks.push_back(rel_check("thomas-fermi kinetic coefficient", tf_profile_coefficient(), ckin, 1e-10));
        const double coul = oracle::coulomb_self_integral(rho, 4.0);
        checks.push_back(rel_check("coulomb self-energy coefficient", 2 * kTfCoulombCoefficient, coul, 1e-9));
    }
    {
        const double beta = 1.5;
        const auto mc = oracle::mc_pair_integral({2 * beta}, {2 * beta}, [&](double r) { return -cfg.grav_kappa / r; },
                                                 0.0, cfg.mc_samples, cfg.seed + 2);
        checks.push_back(se_check("boson pair energy Monte Carlo", mc, -5 * cfg.grav_kappa * beta / 8, 3));
    }

    // centre-of-mass spread on a 13-site cluster
    {
        const Cluster c = build_cluster(LatticeKind::FCC, d, 13);
        const std::size_t n = std::max<std::size_t>(1000, cfg.mc_samples / 10);
        const ComCheck cc = verify_com_on_cluster(lam, c, n, cfg.seed + 3);
        json jc = check("com variance Monte Carlo N=13", cc.estimate, cc.expected, 4, cc.within_4se, "standard errors");
        jc["std_error"] = cc.std_error;
        jc["samples"] = cc.samples;
        jc["seed"] = cc.seed;
        checks.push_back(jc);
    }

    // shell multiplicities against a direct count
    {
        const double R = 4.2;
        const LatticeShells sh = enumerate_shells(LatticeKind::FCC, 1.0, R);
        double total = 0;
        for (const auto& s : sh.shells) total += s.coordination;
        long direct = 0;
        const int L = static_cast<int>(std::ceil(R * std::sqrt(2.0))) + 1;
        for (int i = -L; i <= L; ++i)
            for (int jj = -L; jj <= L; ++jj)
                for (int k = -L; k <= L; ++k) {
                    if ((i + jj + k) % 2 != 0 || (i == 0 && jj == 0 && k == 0)) continue;
                    if (0.5 * (i * i + jj * jj + k * k) <= R * R) ++direct;
                }
        checks.push_back(abs_check("fcc shell count R=4.2", total, static_cast<double>(direct), 0));
    }

    bool all = true;
    for (const auto& c : checks) all = all && c["pass"].get<bool>();
    CommandOutput out;
    out.json["command"] = "verify";
    out.json["seed"] = cfg.seed;
    out.json["mc_samples"] = cfg.mc_samples;
    out.json["checks"] = checks;
    out.json["all_pass"] = all;
    out.exit_code = all ? kExitOk : kExitMismatch;

    Table t;
    t.columns = {"index", "value", "reference", "tolerance", "pass"};
    for (std::size_t i = 0; i < checks.size(); ++i)
        t.rows.push_back({static_cast<double>(i), checks[i]["value"].get<double>(), checks[i]["reference"].get<double>(),
                          checks[i]["tolerance"].get<double>(), checks[i]["pass"].get<bool>() ? 1.0 : 0.0});
    out.table = std::move(t);
    return out;
}

}  // namespace macroloc
