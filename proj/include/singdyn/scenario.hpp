#pragma once

#include <string>
#include <vector>

#include "singdyn/errors.hpp"

namespace singdyn {

struct ReducedParams {
    double mu;           // kappa beta (3 omega - 4) / 2
    double time_scale;   // tau = D t
    double drift_scale;  // w_reduced = kappa w
};

/// Map the physical constants of the purification system to the reduced
/// equation parameters. Requires D, kappa, beta > 0 and omega > 4/3 (the
/// degenerate regime; otherwise no bounded singular solutions exist).
ReducedParams physical_to_reduced(double D, double kappa, double beta, double omega);

struct ScenarioResult {
    int exit_code = 0;  // 0 ok, 2 config error, 3 runtime error
    std::vector<std::string> artifacts;
    std::string error;
};

/// Parse and validate a JSON scenario, run the requested mode, and write CSV,
/// SVG and report.json artifacts into out_dir. A malformed configuration
/// yields exit code 2 and no artifacts; a module failure yields exit code 3
/// with the error recorded in report.json.
ScenarioResult run_scenario(const std::string& config_path, const std::string& out_dir);

/// Render a CSV trajectory as a deterministic SVG plot. x_col/y_col select
/// columns by header name; empty x_col means the first column, empty y_col
/// plots every remaining column as its own series.
void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path,
                     const std::string& x_col = "", const std::string& y_col = "");

}  // namespace singdyn
