#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "macroloc/config.hpp"
#include "macroloc/observables.hpp"

namespace macroloc {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct CommandOutput {
    nlohmann::json json;
    std::optional<Table> table;
    int exit_code = 0;
};

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitConvergence = 2, kExitMismatch = 3 };

/// Header line plus one line per row, every number with 17 significant digits.
std::string to_csv(const Table& t);

struct SuperpositionInput {
    SuperpositionSpec spec;
    double lambda = 0;
    double N = 0;
};
/// {"lambda": .., "N": .., "cutoff_a": .., "branches": [{"displacement": [x, y, z],
///  "weight": c or [re, im]}, ...]}; lengths in sigma.
SuperpositionInput parse_superposition(const nlohmann::json& j);

CommandOutput cmd_optimize(const RunConfig& cfg);
CommandOutput cmd_observables(const RunConfig& cfg, double lambda, double N);
CommandOutput cmd_superposition(const RunConfig& cfg, const SuperpositionInput& in);
/// kind is "boson" or "fermion"; an empty list uses cfg.n_list.
CommandOutput cmd_selfgrav(const RunConfig& cfg, const std::string& kind, const std::vector<double>& N_list);
/// param is "lambda" or "d"; the other coordinate is held at `fixed`.
CommandOutput cmd_sweep(const RunConfig& cfg, const std::string& param, double lo, double hi, int count, double fixed);
CommandOutput cmd_verify(const RunConfig& cfg);

/// Least-squares slope of ln y against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace macroloc
