#include "sdice/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "sdice/adam.hpp"
#include "sdice/brownian.hpp"
#include "sdice/csv.hpp"
#include "sdice/hull_white.hpp"
#include "sdice/metrics.hpp"
#include "sdice/policy.hpp"
#include "sdice/population.hpp"
#include "sdice/sensitivity.hpp"
#include "sdice/version.hpp"

namespace sdice {

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

namespace {

RateSystem build_rate_system(const Scenario& sc, const TimeGrid& grid) {
    const RateConfig& rc = sc.rates;
    if (rc.kind == RateConfig::Kind::deterministic) {
        HullWhiteModel model(grid, HullWhiteModel::calibrate_flat(grid, 0.0, 0.0, rc.rate));
        return model.simulate();
    }
    HullWhiteParams hw =
        rc.calibrate ? HullWhiteModel::calibrate_flat(grid, rc.a, rc.sigma, rc.rate)
                     : HullWhiteParams::flat(grid, rc.a, rc.sigma, rc.rate, rc.a * rc.rate);
    HullWhiteModel model(grid, hw);
    if (rc.sigma == 0.0) return model.simulate();
    BrownianDriver driver(grid, sc.n_paths, sc.seed);
    return model.simulate(driver);
}

std::unique_ptr<Policy> build_policy(const PolicyConfig& pc, const TimeGrid& grid) {
    switch (pc.kind) {
        case PolicyConfig::Kind::one_param:
            return std::make_unique<OneParamPolicy>(pc.mu_initial, pc.t_full);
        case PolicyConfig::Kind::linear_stochastic:
            return std::make_unique<LinearStochasticPolicy>(pc.mu_initial, pc.a0, pc.a1);
        case PolicyConfig::Kind::piecewise:
            return std::make_unique<PiecewisePolicy>(
                grid.steps(), pc.mu_initial,
                std::vector<double>(grid.steps() - 1, pc.mu_initial));
    }
    throw std::logic_error("build_policy: unknown policy kind");
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string literal17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One long-format block of pathways.csv: row per production node.
void emit_quantity(CsvWriter& w, const TimeGrid& grid, const std::string& name, std::size_t n,
                   const std::function<const PathVector&(std::size_t)>& at) {
    for (std::size_t i = 0; i < n; ++i) {
        const PathVector& pv = at(i);
        w.row({std::to_string(i), CsvWriter::num(grid.year(i)), name, CsvWriter::num(pv_mean(pv)),
               CsvWriter::num(pv_quantile(pv, 0.10)), CsvWriter::num(pv_quantile(pv, 0.90))});
    }
}

struct GammaSummary {
    double s_years;
    double integral;
    double t_d_years;
};

}  // namespace

RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
    sc.validate();

    const TimeGrid grid = TimeGrid::uniform(sc.grid.start_year, sc.grid.horizon_years, sc.grid.dt);
    const DiceModel model(grid, sc.params);
    const RateSystem rates = build_rate_system(sc, grid);
    std::unique_ptr<Policy> policy = build_policy(sc.policy, grid);
    const std::vector<ParamSpec> specs = policy->param_specs();

    WelfareObjective objective(model, rates, *policy);
    if (sc.funding.mode != FundingMode::none) objective.set_funding(&sc.funding);
    if (sc.compensator.enabled) objective.set_compensator(&sc.compensator);

    RunResult result;
    result.name = sc.name;
    for (const ParamSpec& spec : specs) result.param_names.push_back(spec.name);

    std::vector<double> x = initial_params(specs);
    AdamResult opt;
    if (sc.policy.optimize) {
        AdamConfig cfg = make_adam_config(specs);
        cfg.learning_rate = sc.adam.learning_rate;
        cfg.beta1 = sc.adam.beta1;
        cfg.beta2 = sc.adam.beta2;
        cfg.epsilon = sc.adam.epsilon;
        cfg.max_iterations = sc.adam.max_iterations;
        cfg.grad_tolerance = sc.adam.grad_tolerance;
        opt = adam_maximize(objective.fn(), x, cfg);
        x = opt.params;
        result.optimized = true;
        result.converged = opt.converged;
        result.iterations = opt.iterations;
        result.grad_norm = opt.grad_norm;
        result.welfare = opt.objective;
    } else {
        result.welfare = objective.value(x);
    }
    result.params = x;

    // Everything below is computed before any file is written, so failures
    // cannot leave partial output behind.
    const Trajectory traj = objective.simulate(x, nullptr);
    result.diagnostics = traj.diag;
    const std::size_t n = grid.steps();

    std::vector<PathVector> burden;  // booked cost per net output
    if (sc.outputs.pathways) burden = cost_per_gdp(traj);

    LifetimeTable population;
    CohortTable cohorts;
    if (sc.outputs.cohorts) {
        population = sc.outputs.population_csv.empty()
                         ? LifetimeTable::constant_fallback()
                         : LifetimeTable::load_csv(sc.outputs.population_csv);
        cohorts = cohort_burden_table(grid, traj, rates, population);
    }

    std::vector<GammaDensity> densities;
    std::vector<GammaSummary> gamma_summaries;
    if (sc.outputs.gamma) {
        // Transplant the (deterministic) abatement path into a piecewise
        // policy so every node carries its own parameter leaf.
        std::vector<double> mu_free(n - 1);
        for (std::size_t s = 1; s < n; ++s) {
            double m = traj.econ[s].mu.val.scalar();
            mu_free[s - 1] = std::min(1.0, std::max(0.0, m));
        }
        const CostSensitivities sens =
            nodewise_cost_sensitivities(model, rates, sc.policy.mu_initial, mu_free);
        for (double y : sc.outputs.gamma_years) {
            const auto s_node = static_cast<std::size_t>(std::llround(y / sc.grid.dt));
            GammaDensity g = gamma_density(grid, s_node, sens);
            gamma_summaries.push_back(
                {y, density_integral(grid, g), expected_damage_time(grid, g)});
            densities.push_back(std::move(g));
        }
    }

    SccSeries scc;
    if (sc.outputs.scc) {
        const AdjointProbes probes = welfare_shift_adjoints(objective, x);
        std::vector<double> df0(n);
        for (std::size_t i = 0; i < n; ++i) df0[i] = pv_mean(rates.discount[i]);
        scc = scc_series(probes, df0);
    }

    fs::create_directories(out_dir);
    const auto out_path = [&](const std::string& file) { return out_dir + "/" + file; };

    if (sc.outputs.pathways) {
        CsvWriter w(out_path("pathways.csv"));
        w.row({"node", "year", "quantity", "mean", "p10", "p90"});
        emit_quantity(w, grid, "mu", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].mu.val; });
        emit_quantity(w, grid, "eind", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].eind.val; });
        emit_quantity(w, grid, "etot", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].etot.val; });
        emit_quantity(w, grid, "mat", n,
                      [&](std::size_t i) -> const PathVector& { return traj.mat[i].val; });
        emit_quantity(w, grid, "tatm", n,
                      [&](std::size_t i) -> const PathVector& { return traj.tatm[i].val; });
        emit_quantity(w, grid, "ygross", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].ygross.val; });
        emit_quantity(w, grid, "damfrac", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].damfrac.val; });
        emit_quantity(w, grid, "cmu", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].cmu.val; });
        emit_quantity(w, grid, "ca", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].ca.val; });
        emit_quantity(w, grid, "cd", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].cd.val; });
        emit_quantity(w, grid, "y", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].y.val; });
        emit_quantity(w, grid, "cons", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].cons.val; });
        emit_quantity(w, grid, "cpc", n,
                      [&](std::size_t i) -> const PathVector& { return traj.econ[i].cpc.val; });
        emit_quantity(w, grid, "cost_per_gdp", n,
                      [&](std::size_t i) -> const PathVector& { return burden[i]; });
        emit_quantity(w, grid, "rho", n,
                      [&](std::size_t i) -> const PathVector& { return rates.rho[i]; });
        emit_quantity(w, grid, "discount", n,
                      [&](std::size_t i) -> const PathVector& { return rates.discount[i]; });
        result.files.push_back("pathways.csv");
    }

    if (sc.outputs.cohorts) {
        CsvWriter w(out_path("cohorts.csv"));
        w.row({"birth_year", "lifetime_years", "population_millions", "truncated", "mean", "p10",
               "p90"});
        for (const CohortRow& r : cohorts.rows)
            w.row({CsvWriter::num(r.birth_year), CsvWriter::num(r.lifetime_years),
                   CsvWriter::num(r.population_millions), r.truncated ? "1" : "0",
                   CsvWriter::num(r.mean), CsvWriter::num(r.p10), CsvWriter::num(r.p90)});
        result.files.push_back("cohorts.csv");
    }

    if (sc.outputs.gamma) {
        CsvWriter w(out_path("gamma_density.csv"));
        w.row({"s_years", "t_years", "gamma"});
        for (std::size_t k = 0; k < densities.size(); ++k)
            for (std::size_t i = 0; i < densities[k].value.size(); ++i)
                w.row({CsvWriter::num(gamma_summaries[k].s_years), CsvWriter::num(grid.t(i)),
                       CsvWriter::num(densities[k].value[i])});
        result.files.push_back("gamma_density.csv");
    }

    if (sc.outputs.scc) {
        CsvWriter w(out_path("scc.csv"));
        w.row({"node", "year", "scc_usd_per_tco2", "scc_numeraire"});
        for (std::size_t i = 0; i < scc.scc.size(); ++i)
            w.row({std::to_string(i), CsvWriter::num(grid.year(i)), CsvWriter::num(scc.scc[i]),
                   CsvWriter::num(scc.scc_numeraire[i])});
        result.files.push_back("scc.csv");
    }

    if (sc.policy.optimize && sc.outputs.trace) {
        CsvWriter w(out_path("adam_trace.csv"));
        std::vector<std::string> header = {"iteration"};
        for (const std::string& name : result.param_names) header.push_back(name);
        header.push_back("objective");
        header.push_back("grad_norm");
        w.row(header);
        for (const AdamTracePoint& p : opt.trace) {
            std::vector<std::string> row = {std::to_string(p.iteration)};
            for (double v : p.params) row.push_back(CsvWriter::num(v));
            row.push_back(CsvWriter::num(p.objective));
            row.push_back(CsvWriter::num(p.grad_norm));
            w.row(row);
        }
        result.files.push_back("adam_trace.csv");
    }

    njson manifest;
    manifest["name"] = sc.name;
    manifest["version"] = version_string;
    manifest["config_hash"] = hash_hex(sc.hash());
    manifest["n_paths"] = sc.n_paths;
    manifest["seed"] = sc.seed;
    manifest["grid"] = {{"start_year", sc.grid.start_year},
                        {"horizon_years", sc.grid.horizon_years},
                        {"dt", sc.grid.dt},
                        {"steps", grid.steps()}};
    njson params_json = njson::object();
    for (std::size_t j = 0; j < result.param_names.size(); ++j)
        params_json[result.param_names[j]] = result.params[j];
    manifest["policy"] = {{"kind", policy->kind()},
                          {"optimize", sc.policy.optimize},
                          {"params", std::move(params_json)}};
    manifest["welfare"] = result.welfare;
    if (result.optimized)
        manifest["optimizer"] = {{"converged", result.converged},
                                 {"iterations", result.iterations},
                                 {"grad_norm", result.grad_norm},
                                 {"evaluations", opt.trace.size()}};
    manifest["diagnostics"] = {{"cpc_floor_hits", result.diagnostics.cpc_floor_hits},
                               {"damfrac_clamp_hits", result.diagnostics.damfrac_clamp_hits},
                               {"truncated_tranches", result.diagnostics.truncated_tranches}};
    if (sc.outputs.gamma) {
        njson rows = njson::array();
        for (const GammaSummary& g : gamma_summaries)
            rows.push_back(
                {{"s_years", g.s_years}, {"integral", g.integral}, {"t_d_years", g.t_d_years}});
        manifest["gamma"] = std::move(rows);
    }
    if (sc.outputs.cohorts) {
        manifest["population_fallback"] = cohorts.population_fallback;
        manifest["cohort_reference"] = cohorts.reference;
    }
    result.files.push_back("manifest.json");
    manifest["files"] = result.files;
    {
        std::ofstream mf(out_path("manifest.json"), std::ios::binary);
        if (!mf) throw std::runtime_error("cannot open " + out_path("manifest.json"));
        mf << manifest.dump(2) << '\n';
        if (!mf) throw std::runtime_error("failed writing " + out_path("manifest.json"));
    }
    return result;
}

SweepResult sweep_scenario(const TomlTable& base_config, const std::string& param,
                           const std::vector<double>& values, const std::string& out_dir) {
    if (param.empty()) throw std::invalid_argument("sweep: parameter key must not be empty");
    if (values.empty()) throw std::invalid_argument("sweep: need at least one value");

    // Materialize and validate every configuration before the first run.
    std::vector<Scenario> scenarios;
    std::vector<std::string> subdirs;
    for (double v : values) {
        TomlTable table = base_config;
        table.set(param, literal17(v));
        Scenario sc = Scenario::from_toml(table);
        sc.validate();
        scenarios.push_back(std::move(sc));
        std::string dir = param;
        for (char& c : dir)
            if (c == '.') c = '-';
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.8g", v);
        subdirs.push_back(dir + "=" + buf);
    }

    SweepResult result;
    result.param = param;
    result.values = values;
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        result.runs.push_back(run_scenario(scenarios[i], out_dir + "/" + subdirs[i]));

    bool uniform = true;
    for (const RunResult& r : result.runs)
        uniform = uniform && r.param_names == result.runs.front().param_names;

    CsvWriter w(out_dir + "/sweep_summary.csv");
    std::vector<std::string> header = {"param", "value", "welfare", "converged", "iterations"};
    if (uniform)
        for (const std::string& name : result.runs.front().param_names) header.push_back(name);
    else
        header.push_back("policy_params");
    w.row(header);
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const RunResult& r = result.runs[i];
        std::vector<std::string> row = {param, CsvWriter::num(values[i]),
                                        CsvWriter::num(r.welfare), r.converged ? "1" : "0",
                                        std::to_string(r.iterations)};
        if (uniform) {
            for (double v : r.params) row.push_back(CsvWriter::num(v));
        } else {
            std::string joined;
            for (std::size_t j = 0; j < r.params.size(); ++j) {
                if (j) joined += ";";
                joined += r.param_names[j] + "=" + CsvWriter::num(r.params[j]);
            }
            row.push_back(joined);
        }
        w.row(row);
    }
    return result;
}

}  // namespace sdice
