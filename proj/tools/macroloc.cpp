#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "macroloc/commands.hpp"
#include "macroloc/errors.hpp"

using namespace macroloc;

namespace {

const char* kCsvHelp = R"(CSV columns (--format csv), numbers with 17 significant digits:
  optimize     distance_sigma,coordination,energy_epsilon,far_field
               (per-shell share of the energy per particle at the optimum)
  selfgrav     boson:   N,beta_star,energy,chi,omega,product
               fermion: N,gamma_star,f_factor,energy,chi
  sweep        lambda,d_sigma,kinetic_epsilon,potential_epsilon,total_epsilon,total_cal_per_mole
  verify       index,value,reference,tolerance,pass  (index into the JSON checks list)
  observables and superposition produce JSON only.
Exit codes: 0 success, 1 input error, 2 convergence failure, 3 verification mismatch.)";

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError("not a number in list: '" + item + "'");
        }
        if (used != item.size()) throw InputError("not a number in list: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const CommandOutput& out, const std::string& format, const std::string& path) {
    std::string text;
    if (format == "csv") {
        if (!out.table) throw InputError("this command has no CSV form; use --format json");
        text = to_csv(*out.table);
    } else {
        text = out.json.dump(2) + "\n";
    }
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write output file '" + path + "'");
    f << text;
    if (!f) throw InputError("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational localized states of a model solid: optimum, spreads, self-gravitating clouds."};
    app.footer(kCsvHelp);
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    std::string config_path, output_path, format = "json";
    app.add_option("-c,--config", config_path, "flat JSON config (snake_case keys); omitted keys keep defaults");
    app.add_option("-o,--output", output_path, "output file (default stdout)");
    app.add_option("-f,--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* optimize = app.add_subcommand("optimize", "minimize the solid energy; cohesive energy, bulk modulus");

    double lambda = 91.33, N = 1.0;
    auto* observables = app.add_subcommand("observables", "centre-of-mass spreads of the product state");
    observables->add_option("--lambda", lambda, "orbital exponent (1/sigma)")->required();
    observables->add_option("--N", N, "particle number (may be macroscopic, e.g. 1e21)")->required();

    std::string spec_path;
    auto* superposition = app.add_subcommand("superposition", "spreads of a translated superposition");
    superposition->add_option("spec", spec_path, "JSON spec: lambda, N, cutoff_a, branches[{displacement, weight}]")
        ->required();

    std::string kind, n_list;
    auto* selfgrav = app.add_subcommand("selfgrav", "self-gravitating bosons or Thomas-Fermi fermions");
    selfgrav->add_option("--kind", kind, "boson or fermion")->required()->check(CLI::IsMember({"boson", "fermion"}));
    selfgrav->add_option("--N-list", n_list, "comma-separated particle numbers (default: config n_list)");

    std::string param, range;
    double fixed = 0;
    auto* sweep = app.add_subcommand("sweep", "energy per particle along lambda or d");
    sweep->add_option("--param", param, "lambda or d")->required()->check(CLI::IsMember({"lambda", "d"}));
    sweep->add_option("--range", range, "lo,hi,count")->required();
    sweep->add_option("--fixed", fixed, "value of the other coordinate (default 91.33 for lambda, 3.953 A for d)");

    auto* verify = app.add_subcommand("verify", "run the oracle cross-checks; exit 3 on any mismatch");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (app.get_subcommands().empty() && !app.remaining().empty()) {
            std::cerr << "unknown command '" << app.remaining().front() << "'\n";
            return kExitInput;
        }
        app.exit(e);
        return kExitInput;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        CommandOutput out;
        if (*optimize) {
            out = cmd_optimize(cfg);
        } else if (*observables) {
            out = cmd_observables(cfg, lambda, N);
        } else if (*superposition) {
            std::ifstream in(spec_path);
            if (!in) throw InputError("cannot read superposition spec '" + spec_path + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::parse_error& e) {
                throw InputError(std::string("malformed superposition spec: ") + e.what());
            }
            out = cmd_superposition(cfg, parse_superposition(j));
        } else if (*selfgrav) {
            out = cmd_selfgrav(cfg, kind, n_list.empty() ? std::vector<double>{} : parse_list(n_list));
        } else if (*sweep) {
            const std::vector<double> r = parse_list(range);
            if (r.size() != 3 || r[2] != std::floor(r[2])) throw InputError("--range expects lo,hi,count");
            if (fixed == 0) fixed = param == "lambda" ? 3.953 / cfg.sigma_A : 91.33;
            out = cmd_sweep(cfg, param, r[0], r[1], static_cast<int>(r[2]), fixed);
        } else if (*verify) {
            out = cmd_verify(cfg);
        }
        emit(out, format, output_path);
        if (out.exit_code == kExitMismatch) std::cerr << "verification mismatch\n";
        return out.exit_code;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
