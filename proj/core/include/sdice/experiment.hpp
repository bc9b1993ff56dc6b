#pragma once

// Scenario execution: build the model, calibrate or simulate the rate
// environment, optimize the policy, and emit result tables plus a
// reproducibility manifest.
//
// run_scenario validates before touching the filesystem, so a bad
// configuration never leaves partial outputs behind. Everything written is a
// deterministic function of the scenario (fixed seeds, no timestamps): a
// rerun produces byte-identical files.
//
// Outputs inside out_dir, gated by [outputs]:
//   pathways.csv       long format (node, year, quantity, mean, p10, p90)
//   cohorts.csv        lifetime cost-per-GDP per birth cohort
//   gamma_density.csv  damage density rows per requested origination year
//   scc.csv            social cost of carbon per production node
//   adam_trace.csv     optimizer trace (only when optimizing with trace on)
//   manifest.json      config hash, final parameters, diagnostics, file list

#include <string>
#include <vector>

#include "sdice/dice_model.hpp"
#include "sdice/scenario.hpp"

namespace sdice {

struct RunResult {
    std::string name;
    std::vector<std::string> param_names;  // policy parameters, spec order
    std::vector<double> params;            // values used for the final run
    double welfare = 0.0;
    bool optimized = false;
    bool converged = true;  // true when not optimizing
    std::size_t iterations = 0;
    double grad_norm = 0.0;
    Diagnostics diagnostics;
    std::vector<std::string> files;  // paths written, relative to out_dir
};

// Runs one scenario, writing outputs into out_dir (created if needed).
// Throws std::invalid_argument for configuration problems and
// std::runtime_error (or std::filesystem errors) for execution failures.
RunResult run_scenario(const Scenario& scenario, const std::string& out_dir);

struct SweepResult {
    std::string param;  // dotted config key, e.g. "rates.sigma"
    std::vector<double> values;
    std::vector<RunResult> runs;
};

// Re-runs the base configuration once per value of `param`, each run in its
// own subdirectory (<param with dots as dashes>=<value>), plus a
// sweep_summary.csv. Every configuration is parsed and validated up front so
// a bad value aborts the whole sweep before any run starts.
SweepResult sweep_scenario(const TomlTable& base_config, const std::string& param,
                           const std::vector<double>& values, const std::string& out_dir);

}  // namespace sdice
