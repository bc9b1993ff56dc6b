// Experiment driver. `run` executes one scenario file; `sweep` re-runs it
// across values of a single config key. Exit codes: 0 success, 1 the
// configuration was rejected, 2 execution failed.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sdice/experiment.hpp"
#include "sdice/scenario.hpp"
#include "sdice/toml_lite.hpp"
#include "sdice/version.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t paths = 0;   // 0 = keep config value
    long long seed = -1;       // <0 = keep config value
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("config", opt.config_path, "scenario TOML file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
    cmd->add_option("--paths", opt.paths, "override monte_carlo.paths");
    cmd->add_option("--seed", opt.seed, "override monte_carlo.seed");
    cmd->add_option("--set", opt.overrides,
                    "override any config key, key=<TOML literal> (repeatable)");
}

// Applies CLI overrides on top of the parsed file; throws on malformed input.
sdice::TomlTable load_config(const CliOptions& opt) {
    sdice::TomlTable table = sdice::TomlTable::parse_file(opt.config_path);
    if (opt.paths > 0) table.set("monte_carlo.paths", std::to_string(opt.paths));
    if (opt.seed >= 0) table.set("monte_carlo.seed", std::to_string(opt.seed));
    for (const std::string& kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error("config: --set expects key=value, got '" + kv + "'");
        table.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return table;
}

void print_run(const sdice::RunResult& r, const std::string& out_dir) {
    std::printf("scenario '%s': welfare %.10g\n", r.name.c_str(), r.welfare);
    if (r.optimized)
        std::printf("  optimizer %s after %zu iterations, |grad| = %.3e\n",
                    r.converged ? "converged" : "hit the iteration cap", r.iterations,
                    r.grad_norm);
    for (std::size_t j = 0; j < r.params.size(); ++j)
        std::printf("  %s = %.10g\n", r.param_names[j].c_str(), r.params[j]);
    const auto& d = r.diagnostics;
    if (d.cpc_floor_hits || d.damfrac_clamp_hits || d.truncated_tranches)
        std::printf("  diagnostics: %zu consumption-floor, %zu damage-cap, %zu truncated-tranche hits\n",
                    d.cpc_floor_hits, d.damfrac_clamp_hits, d.truncated_tranches);
    for (const std::string& f : r.files) std::printf("  wrote %s/%s\n", out_dir.c_str(), f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic-discounting climate-economy experiments"};
    app.set_version_flag("--version", std::string(sdice::version_string));
    app.require_subcommand(1);

    CliOptions opt;
    std::string sweep_param;
    std::vector<double> sweep_values;

    CLI::App* run = app.add_subcommand("run", "run one scenario");
    add_common(run, opt);
    CLI::App* sweep = app.add_subcommand("sweep", "re-run a scenario across values of one key");
    add_common(sweep, opt);
    sweep->add_option("--param", sweep_param, "dotted config key, e.g. rates.sigma")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    // Configuration phase: parse, override, validate. Nothing is written yet.
    sdice::TomlTable table;
    sdice::Scenario scenario;
    try {
        table = load_config(opt);
        if (run->parsed()) {
            scenario = sdice::Scenario::from_toml(table);
            scenario.validate();
        } else {
            // Validate every sweep point up front so a bad value fails fast.
            for (double v : sweep_values) {
                char lit[40];
                std::snprintf(lit, sizeof lit, "%.17g", v);
                sdice::TomlTable probe = table;
                probe.set(sweep_param, lit);
                sdice::Scenario::from_toml(probe).validate();
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    try {
        if (run->parsed()) {
            const sdice::RunResult r = sdice::run_scenario(scenario, opt.out_dir);
            print_run(r, opt.out_dir);
        } else {
            const sdice::SweepResult s =
                sdice::sweep_scenario(table, sweep_param, sweep_values, opt.out_dir);
            std::printf("sweep over %s: %zu runs\n", s.param.c_str(), s.runs.size());
            for (std::size_t i = 0; i < s.runs.size(); ++i) {
                std::printf("-- %s = %.8g\n", s.param.c_str(), s.values[i]);
                print_run(s.runs[i], opt.out_dir);
            }
            std::printf("  wrote %s/sweep_summary.csv\n", opt.out_dir.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
