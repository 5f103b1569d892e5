#include "macroloc/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& v, const std::string& key) {
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw InputError("");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer() && !(v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()))
                throw InputError("");
            if (v.get<double>() < 0) throw InputError("");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw InputError("");
        }
        return v.get<T>();
    } catch (const std::exception&) {
        throw InputError("config key '" + key + "' has the wrong type");
    }
}

template <class T>
void add_key(std::map<std::string, std::function<void(const json&)>>& m, const std::string& key, T& field) {
    m[key] = [&field, key](const json& v) { field = get_as<T>(v, key); };
}

void positive(double x, const char* key) {
    if (!(x > 0) || !std::isfinite(x)) throw InputError(std::string("config: ") + key + " must be positive");
}

void unit_interval(double x, const char* key) {
    if (!(x > 0 && x < 1)) throw InputError(std::string("config: ") + key + " must lie in (0, 1)");
}

}  // namespace

void validate(const RunConfig& c) {
    positive(c.b, "b");
    positive(c.m, "m");
    positive(c.n, "n");
    if (!(c.n > c.m)) throw InputError("config: n must exceed m");
    positive(c.epsilon_K, "epsilon_K");
    positive(c.sigma_A, "sigma_A");
    positive(c.mass_u, "mass_u");
    positive(c.lambda0, "lambda0");
    positive(c.d0, "d0");
    unit_interval(c.x_rel_tol, "x_rel_tol");
    if (c.max_iterations < 1) throw InputError("config: max_iterations must be at least 1");
    if (!(c.shell_max_distance >= 1)) throw InputError("config: shell_max_distance must be at least 1 (units of d)");
    unit_interval(c.quadrature_rel_tol, "quadrature_rel_tol");
    unit_interval(c.fd_step, "fd_step");
    if (c.n_list.empty()) throw InputError("config: n_list must not be empty");
    for (double N : c.n_list)
        if (!(N >= 2) || !std::isfinite(N)) throw InputError("config: n_list entries must be at least 2");
    positive(c.grav_kappa, "grav_kappa");
    positive(c.grav_mu, "grav_mu");
    positive(c.grav_hbar, "grav_hbar");
    if (!(c.fermion_q >= 1)) throw InputError("config: fermion_q must be at least 1");
    positive(c.fermion_e, "fermion_e");
    if (c.mc_samples < 1000) throw InputError("config: mc_samples must be at least 1000");
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    RunConfig c;
    std::map<std::string, std::function<void(const json&)>> setters;
    add_key(setters, "b", c.b);
    add_key(setters, "m", c.m);
    add_key(setters, "n", c.n);
    add_key(setters, "epsilon_K", c.epsilon_K);
    add_key(setters, "sigma_A", c.sigma_A);
    add_key(setters, "mass_u", c.mass_u);
    add_key(setters, "lambda0", c.lambda0);
    add_key(setters, "d0", c.d0);
    add_key(setters, "x_rel_tol", c.x_rel_tol);
    add_key(setters, "max_iterations", c.max_iterations);
    add_key(setters, "shell_max_distance", c.shell_max_distance);
    add_key(setters, "far_field_tail", c.far_field_tail);
    add_key(setters, "quadrature_rel_tol", c.quadrature_rel_tol);
    add_key(setters, "relax_lambda", c.relax_lambda);
    add_key(setters, "fd_step", c.fd_step);
    add_key(setters, "grav_kappa", c.grav_kappa);
    add_key(setters, "grav_mu", c.grav_mu);
    add_key(setters, "grav_hbar", c.grav_hbar);
    add_key(setters, "fermion_q", c.fermion_q);
    add_key(setters, "fermion_e", c.fermion_e);
    add_key(setters, "seed", c.seed);
    add_key(setters, "mc_samples", c.mc_samples);
    setters["n_list"] = [&c](const json& v) {
        if (!v.is_array()) throw InputError("config key 'n_list' must be an array of numbers");
        c.n_list.clear();
        for (const auto& x : v) c.n_list.push_back(get_as<double>(x, "n_list"));
    };
    for (const auto& [key, value] : j.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw InputError("unknown config key '" + key + "'");
        it->second(value);
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("malformed config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    return json{{"b", c.b},
                {"m", c.m},
                {"n", c.n},
                {"epsilon_K", c.epsilon_K},
                {"sigma_A", c.sigma_A},
                {"mass_u", c.mass_u},
                {"lambda0", c.lambda0},
                {"d0", c.d0},
                {"x_rel_tol", c.x_rel_tol},
                {"max_iterations", c.max_iterations},
                {"shell_max_distance", c.shell_max_distance},
                {"far_field_tail", c.far_field_tail},
                {"quadrature_rel_tol", c.quadrature_rel_tol},
                {"relax_lambda", c.relax_lambda},
                {"fd_step", c.fd_step},
                {"n_list", c.n_list},
                {"grav_kappa", c.grav_kappa},
                {"grav_mu", c.grav_mu},
                {"grav_hbar", c.grav_hbar},
                {"fermion_q", c.fermion_q},
                {"fermion_e", c.fermion_e},
                {"seed", c.seed},
                {"mc_samples", c.mc_samples}};
}

UnitSystem units_of(const RunConfig& c) { return make_units(c.sigma_A * 1e-10, c.epsilon_K, c.mass_u); }

TwoYukawaParams potential_of(const RunConfig& c) {
    TwoYukawaParams p;
    p.b = c.b;
    p.m = c.m;
    p.n = c.n;
    return p;
}

SolverOptions solver_of(const RunConfig& c) {
    SolverOptions o;
    o.lambda0 = c.lambda0;
    o.d0 = c.d0;
    o.x_rel_tol = c.x_rel_tol;
    o.max_iterations = c.max_iterations;
    o.shell_range = c.shell_max_distance;
    o.energy.far_field_tail = c.far_field_tail;
    o.energy.quadrature.rel_tol = c.quadrature_rel_tol;
    o.relax_lambda = c.relax_lambda;
    o.fd_step = c.fd_step;
    return o;
}

}  // namespace macroloc
