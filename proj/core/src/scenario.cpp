#include "sdice/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdice {

namespace {

// Scalar DiceParams fields addressable from [params], by their GAMS-source
// names (the struct mirrors them one to one).
const std::vector<std::pair<const char*, double DiceParams::*>>& param_fields() {
    static const std::vector<std::pair<const char*, double DiceParams::*>> fields = {
        {"elasmu", &DiceParams::elasmu},
        {"prstp", &DiceParams::prstp},
        {"utility_scale", &DiceParams::utility_scale},
        {"pop0", &DiceParams::pop0},
        {"popasym", &DiceParams::popasym},
        {"popadj", &DiceParams::popadj},
        {"a0", &DiceParams::a0},
        {"ga0", &DiceParams::ga0},
        {"dela", &DiceParams::dela},
        {"gama", &DiceParams::gama},
        {"dk", &DiceParams::dk},
        {"k0", &DiceParams::k0},
        {"q0", &DiceParams::q0},
        {"e0", &DiceParams::e0},
        {"miu0", &DiceParams::miu0},
        {"gsigma1", &DiceParams::gsigma1},
        {"dsig", &DiceParams::dsig},
        {"eland0", &DiceParams::eland0},
        {"deland", &DiceParams::deland},
        {"mat0", &DiceParams::mat0},
        {"mu0_carbon", &DiceParams::mu0_carbon},
        {"ml0", &DiceParams::ml0},
        {"mateq", &DiceParams::mateq},
        {"mueq", &DiceParams::mueq},
        {"mleq", &DiceParams::mleq},
        {"b12", &DiceParams::b12},
        {"b23", &DiceParams::b23},
        {"t2xco2", &DiceParams::t2xco2},
        {"fco22x", &DiceParams::fco22x},
        {"tatm0", &DiceParams::tatm0},
        {"tocean0", &DiceParams::tocean0},
        {"c1", &DiceParams::c1},
        {"c3", &DiceParams::c3},
        {"c4", &DiceParams::c4},
        {"fex0", &DiceParams::fex0},
        {"fex1", &DiceParams::fex1},
        {"fex_ramp_years", &DiceParams::fex_ramp_years},
        {"a2", &DiceParams::a2},
        {"a3", &DiceParams::a3},
        {"expcost2", &DiceParams::expcost2},
        {"pback", &DiceParams::pback},
        {"gback", &DiceParams::gback},
        {"limmiu", &DiceParams::limmiu},
        {"cons_floor", &DiceParams::cons_floor},
        {"co2_per_c", &DiceParams::co2_per_c},
    };
    return fields;
}

std::uint64_t uint_at(const TomlTable& t, const std::string& key, std::uint64_t fallback) {
    if (!t.has(key)) return fallback;
    const double v = t.number_at(key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15)
        throw std::runtime_error("config: key '" + key + "' must be a non-negative integer");
    return std::uint64_t(v);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Scenario Scenario::from_toml(const TomlTable& table) {
    Scenario sc;
    sc.name = table.string_at("name");

    sc.grid.start_year = table.number_or("grid.start_year", sc.grid.start_year);
    sc.grid.horizon_years = table.number_or("grid.horizon_years", sc.grid.horizon_years);
    sc.grid.dt = table.number_or("grid.dt", sc.grid.dt);

    const std::string rate_kind = table.string_or("rates.kind", "deterministic");
    if (rate_kind == "deterministic")
        sc.rates.kind = RateConfig::Kind::deterministic;
    else if (rate_kind == "hull_white")
        sc.rates.kind = RateConfig::Kind::hull_white;
    else
        throw std::runtime_error("config: rates.kind must be 'deterministic' or 'hull_white'");
    sc.rates.rate = table.number_or("rates.rate", sc.rates.rate);
    sc.rates.a = table.number_or("rates.a", sc.rates.a);
    sc.rates.sigma = table.number_or("rates.sigma", sc.rates.sigma);
    sc.rates.calibrate = table.bool_or("rates.calibrate", sc.rates.calibrate);

    const std::string policy_kind = table.string_or("policy.kind", "one_param");
    if (policy_kind == "one_param")
        sc.policy.kind = PolicyConfig::Kind::one_param;
    else if (policy_kind == "linear_stochastic")
        sc.policy.kind = PolicyConfig::Kind::linear_stochastic;
    else if (policy_kind == "piecewise")
        sc.policy.kind = PolicyConfig::Kind::piecewise;
    else
        throw std::runtime_error(
            "config: policy.kind must be 'one_param', 'linear_stochastic' or 'piecewise'");
    sc.policy.mu_initial = table.number_or("policy.mu_initial", sc.policy.mu_initial);
    sc.policy.t_full = table.number_or("policy.t_full", sc.policy.t_full);
    sc.policy.a0 = table.number_or("policy.a0", sc.policy.a0);
    sc.policy.a1 = table.number_or("policy.a1", sc.policy.a1);
    sc.policy.optimize = table.bool_or("policy.optimize", sc.policy.optimize);

    sc.adam.learning_rate = table.number_or("adam.learning_rate", sc.adam.learning_rate);
    sc.adam.beta1 = table.number_or("adam.beta1", sc.adam.beta1);
    sc.adam.beta2 = table.number_or("adam.beta2", sc.adam.beta2);
    sc.adam.epsilon = table.number_or("adam.epsilon", sc.adam.epsilon);
    sc.adam.max_iterations =
        std::size_t(uint_at(table, "adam.max_iterations", sc.adam.max_iterations));
    sc.adam.grad_tolerance = table.number_or("adam.grad_tolerance", sc.adam.grad_tolerance);

    for (const auto& [fname, member] : param_fields()) {
        const std::string key = std::string("params.") + fname;
        if (table.has(key)) sc.params.*member = table.number_at(key);
    }

    const std::string funding_mode = table.string_or("funding.mode", "none");
    if (funding_mode == "none")
        sc.funding.mode = FundingMode::none;
    else if (funding_mode == "single")
        sc.funding.mode = FundingMode::single;
    else if (funding_mode == "annuity")
        sc.funding.mode = FundingMode::annuity;
    else
        throw std::runtime_error("config: funding.mode must be 'none', 'single' or 'annuity'");
    sc.funding.maturity_years = table.number_or("funding.maturity_years", sc.funding.maturity_years);
    sc.funding.tranches = int(uint_at(table, "funding.tranches", std::uint64_t(sc.funding.tranches)));
    sc.funding.spread = table.number_or("funding.spread", sc.funding.spread);

    sc.compensator.enabled = table.bool_or("compensator.enabled", sc.compensator.enabled);
    sc.compensator.threshold = table.number_or("compensator.threshold", sc.compensator.threshold);
    sc.compensator.multiplier = table.number_or("compensator.multiplier", sc.compensator.multiplier);
    const std::string normalizer = table.string_or("compensator.normalizer", "gross_output");
    if (normalizer == "gross_output")
        sc.compensator.normalizer = CompensatorConfig::Normalizer::gross_output;
    else if (normalizer == "numeraire")
        sc.compensator.normalizer = CompensatorConfig::Normalizer::numeraire;
    else
        throw std::runtime_error(
            "config: compensator.normalizer must be 'gross_output' or 'numeraire'");
    sc.compensator.smooth_ramp = table.bool_or("compensator.smooth_ramp", sc.compensator.smooth_ramp);
    sc.compensator.ramp_width = table.number_or("compensator.ramp_width", sc.compensator.ramp_width);
    sc.compensator.affects_output =
        table.bool_or("compensator.affects_output", sc.compensator.affects_output);

    sc.n_paths = std::size_t(uint_at(table, "monte_carlo.paths", sc.n_paths));
    sc.seed = uint_at(table, "monte_carlo.seed", sc.seed);

    sc.outputs.pathways = table.bool_or("outputs.pathways", sc.outputs.pathways);
    sc.outputs.cohorts = table.bool_or("outputs.cohorts", sc.outputs.cohorts);
    sc.outputs.gamma = table.bool_or("outputs.gamma", sc.outputs.gamma);
    sc.outputs.scc = table.bool_or("outputs.scc", sc.outputs.scc);
    sc.outputs.trace = table.bool_or("outputs.trace", sc.outputs.trace);
    if (table.has("outputs.gamma_years"))
        sc.outputs.gamma_years = table.numbers_at("outputs.gamma_years");
    sc.outputs.population_csv = table.string_or("outputs.population_csv", "");

    // Reject anything the reads above did not consume, with its dotted path.
    std::set<std::string> legal = {"name",
                                   "grid.start_year",
                                   "grid.horizon_years",
                                   "grid.dt",
                                   "rates.kind",
                                   "rates.rate",
                                   "rates.a",
                                   "rates.sigma",
                                   "rates.calibrate",
                                   "policy.kind",
                                   "policy.mu_initial",
                                   "policy.t_full",
                                   "policy.a0",
                                   "policy.a1",
                                   "policy.optimize",
                                   "adam.learning_rate",
                                   "adam.beta1",
                                   "adam.beta2",
                                   "adam.epsilon",
                                   "adam.max_iterations",
                                   "adam.grad_tolerance",
                                   "funding.mode",
                                   "funding.maturity_years",
                                   "funding.tranches",
                                   "funding.spread",
                                   "compensator.enabled",
                                   "compensator.threshold",
                                   "compensator.multiplier",
                                   "compensator.normalizer",
                                   "compensator.smooth_ramp",
                                   "compensator.ramp_width",
                                   "compensator.affects_output",
                                   "monte_carlo.paths",
                                   "monte_carlo.seed",
                                   "outputs.pathways",
                                   "outputs.cohorts",
                                   "outputs.gamma",
                                   "outputs.scc",
                                   "outputs.trace",
                                   "outputs.gamma_years",
                                   "outputs.population_csv"};
    for (const auto& [fname, member] : param_fields()) legal.insert(std::string("params.") + fname);
    for (const auto& [key, value] : table.entries())
        if (legal.count(key) == 0) throw std::runtime_error("config: unknown key '" + key + "'");

    sc.validate();
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    return from_toml(TomlTable::parse_file(path));
}

void Scenario::validate() const {
    if (name.empty()) throw std::invalid_argument("scenario: name must not be empty");
    if (!(grid.dt > 0.0)) throw std::invalid_argument("scenario: grid.dt must be positive");
    if (!(grid.horizon_years >= grid.dt))
        throw std::invalid_argument("scenario: horizon must cover at least one step");
    if (!(std::fabs(grid.horizon_years / grid.dt - std::round(grid.horizon_years / grid.dt)) <
          1e-9))
        throw std::invalid_argument("scenario: horizon must be a whole number of steps");
    if (!(rates.a >= 0.0)) throw std::invalid_argument("scenario: rates.a must be >= 0");
    if (!(rates.sigma >= 0.0)) throw std::invalid_argument("scenario: rates.sigma must be >= 0");
    if (!std::isfinite(rates.rate)) throw std::invalid_argument("scenario: rates.rate must be finite");
    if (policy.mu_initial < 0.0 || policy.mu_initial >= 1.0)
        throw std::invalid_argument("scenario: policy.mu_initial must lie in [0,1)");
    if (policy.kind == PolicyConfig::Kind::one_param && !(policy.t_full > 0.0))
        throw std::invalid_argument("scenario: policy.t_full must be positive");
    if (n_paths == 0) throw std::invalid_argument("scenario: monte_carlo.paths must be >= 1");
    if (rates.kind == RateConfig::Kind::hull_white && rates.sigma > 0.0 &&
        policy.kind != PolicyConfig::Kind::piecewise && n_paths < 2)
        throw std::invalid_argument("scenario: stochastic rates need more than one path");
    params.validate();
    if (funding.mode != FundingMode::none) funding.validate();
    if (compensator.enabled) compensator.validate();
    for (double y : outputs.gamma_years) {
        if (!(y > 0.0) || y >= grid.horizon_years)
            throw std::invalid_argument("scenario: outputs.gamma_years must lie inside the horizon");
        if (std::fabs(y / grid.dt - std::round(y / grid.dt)) > 1e-9)
            throw std::invalid_argument("scenario: outputs.gamma_years must sit on grid nodes");
    }
    if (outputs.gamma && policy.kind == PolicyConfig::Kind::linear_stochastic &&
        rates.kind == RateConfig::Kind::hull_white && rates.sigma > 0.0)
        throw std::invalid_argument(
            "scenario: outputs.gamma needs a deterministic abatement path; a rate-responsive "
            "policy under stochastic rates is path-dependent");
}

std::string Scenario::canonical() const {
    std::ostringstream os;
    os << "name=" << name << "\n";
    os << "grid.start_year=" << fmt(grid.start_year) << "\n";
    os << "grid.horizon_years=" << fmt(grid.horizon_years) << "\n";
    os << "grid.dt=" << fmt(grid.dt) << "\n";
    os << "rates.kind=" << (rates.kind == RateConfig::Kind::deterministic ? "deterministic"
                                                                          : "hull_white")
       << "\n";
    os << "rates.rate=" << fmt(rates.rate) << "\n";
    os << "rates.a=" << fmt(rates.a) << "\n";
    os << "rates.sigma=" << fmt(rates.sigma) << "\n";
    os << "rates.calibrate=" << (rates.calibrate ? "true" : "false") << "\n";
    switch (policy.kind) {
        case PolicyConfig::Kind::one_param: os << "policy.kind=one_param\n"; break;
        case PolicyConfig::Kind::linear_stochastic: os << "policy.kind=linear_stochastic\n"; break;
        case PolicyConfig::Kind::piecewise: os << "policy.kind=piecewise\n"; break;
    }
    os << "policy.mu_initial=" << fmt(policy.mu_initial) << "\n";
    os << "policy.t_full=" << fmt(policy.t_full) << "\n";
    os << "policy.a0=" << fmt(policy.a0) << "\n";
    os << "policy.a1=" << fmt(policy.a1) << "\n";
    os << "policy.optimize=" << (policy.optimize ? "true" : "false") << "\n";
    os << "adam.learning_rate=" << fmt(adam.learning_rate) << "\n";
    os << "adam.beta1=" << fmt(adam.beta1) << "\n";
    os << "adam.beta2=" << fmt(adam.beta2) << "\n";
    os << "adam.epsilon=" << fmt(adam.epsilon) << "\n";
    os << "adam.max_iterations=" << adam.max_iterations << "\n";
    os << "adam.grad_tolerance=" << fmt(adam.grad_tolerance) << "\n";
    for (const auto& [fname, member] : param_fields())
        os << "params." << fname << "=" << fmt(params.*member) << "\n";
    switch (funding.mode) {
        case FundingMode::none: os << "funding.mode=none\n"; break;
        case FundingMode::single: os << "funding.mode=single\n"; break;
        case FundingMode::annuity: os << "funding.mode=annuity\n"; break;
    }
    os << "funding.maturity_years=" << fmt(funding.maturity_years) << "\n";
    os << "funding.tranches=" << funding.tranches << "\n";
    os << "funding.spread=" << fmt(funding.spread) << "\n";
    os << "compensator.enabled=" << (compensator.enabled ? "true" : "false") << "\n";
    os << "compensator.threshold=" << fmt(compensator.threshold) << "\n";
    os << "compensator.multiplier=" << fmt(compensator.multiplier) << "\n";
    os << "compensator.normalizer="
       << (compensator.normalizer == CompensatorConfig::Normalizer::gross_output ? "gross_output"
                                                                                 : "numeraire")
       << "\n";
    os << "compensator.smooth_ramp=" << (compensator.smooth_ramp ? "true" : "false") << "\n";
    os << "compensator.ramp_width=" << fmt(compensator.ramp_width) << "\n";
    os << "compensator.affects_output=" << (compensator.affects_output ? "true" : "false") << "\n";
    os << "monte_carlo.paths=" << n_paths << "\n";
    os << "monte_carlo.seed=" << seed << "\n";
    os << "outputs.pathways=" << (outputs.pathways ? "true" : "false") << "\n";
    os << "outputs.cohorts=" << (outputs.cohorts ? "true" : "false") << "\n";
    os << "outputs.gamma=" << (outputs.gamma ? "true" : "false") << "\n";
    os << "outputs.scc=" << (outputs.scc ? "true" : "false") << "\n";
    os << "outputs.trace=" << (outputs.trace ? "true" : "false") << "\n";
    os << "outputs.gamma_years=";
    for (std::size_t i = 0; i < outputs.gamma_years.size(); ++i)
        os << (i ? "," : "") << fmt(outputs.gamma_years[i]);
    os << "\n";
    os << "outputs.population_csv=" << outputs.population_csv << "\n";
    return os.str();
}

std::uint64_t Scenario::hash() const {
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace sdice
