#pragma once

// Declarative experiment configuration.
//
// A scenario file is the minimal TOML dialect of toml_lite.hpp with these
// sections (all keys optional unless noted):
//
//   name = "classic"                  # required
//   [grid]    start_year, horizon_years, dt
//   [rates]   kind = "deterministic" | "hull_white"
//             rate (flat calibration target / deterministic level),
//             a, sigma, calibrate (hull_white only; calibrate = false uses the
//             uncalibrated flat drift theta = a * rate instead of fitting the
//             initial curve)
//   [policy]  kind = "one_param" | "linear_stochastic" | "piecewise"
//             mu_initial, t_full (one_param), a0, a1 (linear_stochastic),
//             optimize = true|false
//   [adam]    learning_rate, max_iterations, grad_tolerance
//   [params]  any scalar DiceParams field by its GAMS name (t2xco2, a2, ...)
//   [funding] mode = "none" | "single" | "annuity", maturity_years, tranches,
//             spread
//   [compensator] enabled, threshold, multiplier,
//             normalizer = "gross_output" | "numeraire", smooth_ramp,
//             ramp_width, affects_output
//   [monte_carlo] paths, seed
//   [outputs] pathways, cohorts, gamma, scc, trace (booleans; gamma_years =
//             [..] origination times), population_csv = "path"
//
// Unknown keys are rejected with their dotted path, so a typo cannot silently
// fall back to a default. canonical() serializes every resolved field in a
// fixed order; hash() (FNV-1a over that string) goes into the run manifest so
// outputs are traceable to their exact configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdice/adam.hpp"
#include "sdice/compensator.hpp"
#include "sdice/dice_params.hpp"
#include "sdice/funding.hpp"
#include "sdice/toml_lite.hpp"

namespace sdice {

struct GridConfig {
    double start_year = 2015.0;
    double horizon_years = 500.0;
    double dt = 1.0;
};

struct RateConfig {
    enum class Kind { deterministic, hull_white };
    Kind kind = Kind::deterministic;
    double rate = 0.015;  // flat target (and rho(0))
    double a = 0.02;
    double sigma = 0.003;
    bool calibrate = true;
};

struct PolicyConfig {
    enum class Kind { one_param, linear_stochastic, piecewise };
    Kind kind = Kind::one_param;
    double mu_initial = 0.03;
    double t_full = 100.0;  // one_param initial guess
    double a0 = 0.0097;     // linear_stochastic initial guesses
    double a1 = 0.0;
    bool optimize = true;
};

struct OutputConfig {
    bool pathways = true;
    bool cohorts = false;
    bool gamma = false;
    bool scc = false;
    bool trace = false;
    std::vector<double> gamma_years = {10.0, 20.0, 50.0};  // origination times
    std::string population_csv;                            // empty -> fallback table
};

struct Scenario {
    std::string name;
    GridConfig grid;
    RateConfig rates;
    PolicyConfig policy;
    AdamConfig adam;  // bounds/step scales filled from the policy at run time
    DiceParams params = DiceParams::dice2016();
    FundingConfig funding;          // mode == none when absent
    CompensatorConfig compensator;  // enabled == false when absent
    std::size_t n_paths = 10000;
    std::uint64_t seed = 42;
    OutputConfig outputs;

    static Scenario from_toml(const TomlTable& table);
    static Scenario from_file(const std::string& path);

    void validate() const;
    std::string canonical() const;  // fixed-order serialization of all fields
    std::uint64_t hash() const;     // FNV-1a 64 of canonical()
};

}  // namespace sdice
