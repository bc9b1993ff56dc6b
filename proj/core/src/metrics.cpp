#include "sdice/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace sdice {

std::vector<PathVector> cost_per_gdp(const Trajectory& traj) {
    std::vector<PathVector> out;
    out.reserve(traj.econ.size());
    for (const NodeEcon& e : traj.econ) {
        const PathVector cost = pv_add(e.ca.val, e.cd.val);
        const PathVector& y = e.y.val;
        const std::size_t n = y.is_scalar() ? 1 : y.size();
        for (std::size_t p = 0; p < n; ++p)
            if (!(y.at(p) > 0.0)) throw std::domain_error("cost_per_gdp: non-positive net output");
        out.push_back(pv_div(cost, y));
    }
    return out;
}

LifetimeAverage lifetime_average(const TimeGrid& grid, const std::vector<PathVector>& series,
                                 const std::vector<PathVector>& discount, std::size_t s_node,
                                 double lifetime_years) {
    const std::size_t n = grid.steps();
    if (series.size() != n)
        throw std::invalid_argument("lifetime_average: need one series entry per production node");
    if (discount.size() != grid.nodes())
        throw std::invalid_argument("lifetime_average: need one discount entry per grid node");
    if (s_node >= n) throw std::out_of_range("lifetime_average: birth node outside grid");
    if (!(lifetime_years > 0.0))
        throw std::invalid_argument("lifetime_average: lifetime must be positive");

    const double t_last = grid.t(n - 1);  // last production node
    double t_end = grid.t(s_node) + lifetime_years;
    LifetimeAverage out;
    if (t_end > t_last) {
        t_end = t_last;
        out.truncated = true;
    }
    if (t_end <= grid.t(s_node)) {
        // Degenerate window (birth at the final production node): fall back to
        // the instantaneous value so downstream ratios stay well defined.
        out.value = series[s_node];
        return out;
    }

    // Integrand f(t) = x(t) * N(s)/N(t), trapezoidal between production nodes
    // with a linearly interpolated partial end segment.
    const auto f_at = [&](std::size_t k) {
        return pv_mul(series[k], pv_div(discount[k], discount[s_node]));
    };
    PathVector acc(0.0);
    PathVector f_prev = f_at(s_node);
    for (std::size_t k = s_node; k + 1 < n; ++k) {
        const double a = grid.t(k), b = grid.t(k + 1);
        if (a >= t_end) break;
        PathVector f_next = f_at(k + 1);
        if (b <= t_end) {
            acc = pv_add(acc, pv_affine(pv_add(f_prev, f_next), 0.5 * (b - a), 0.0));
        } else {
            const double w = (t_end - a) / (b - a);
            // f(t_end) by linear interpolation: (1-w) f_a + w f_b.
            PathVector f_end = pv_add(pv_affine(f_prev, 1.0 - w, 0.0), pv_affine(f_next, w, 0.0));
            acc = pv_add(acc, pv_affine(pv_add(f_prev, f_end), 0.5 * (t_end - a), 0.0));
            break;
        }
        f_prev = std::move(f_next);
    }
    out.value = std::move(acc);
    return out;
}

GammaDensity gamma_density(const TimeGrid& grid, std::size_t s_node,
                           const CostSensitivities& sens) {
    const std::size_t n = sens.dcd.size();
    if (grid.steps() != n) throw std::invalid_argument("gamma_density: grid/sensitivity mismatch");
    if (s_node == 0 || s_node >= n)
        throw std::out_of_range("gamma_density: origination node has no free parameter");

    const double denom = sens.welfare_weight[s_node] * sens.dca[s_node][s_node];
    if (!(std::fabs(denom) > 1e-300))
        throw std::domain_error("gamma_density: vanishing abatement-cost sensitivity");

    GammaDensity g;
    g.s_node = s_node;
    g.value.assign(n, 0.0);
    for (std::size_t t = s_node; t < n; ++t)
        g.value[t] = -sens.welfare_weight[t] * sens.dcd[t][s_node] / denom;
    return g;
}

double density_integral(const TimeGrid& grid, const GammaDensity& g) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < g.value.size(); ++k)
        acc += 0.5 * (g.value[k] + g.value[k + 1]) * (grid.t(k + 1) - grid.t(k));
    return acc;
}

double expected_damage_time(const TimeGrid& grid, const GammaDensity& g) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < g.value.size(); ++k) {
        const double fa = grid.t(k) * g.value[k];
        const double fb = grid.t(k + 1) * g.value[k + 1];
        acc += 0.5 * (fa + fb) * (grid.t(k + 1) - grid.t(k));
    }
    return acc;
}

SccSeries scc_series(const AdjointProbes& probes, const std::vector<double>& df0) {
    const std::size_t n = probes.consumption.size();
    if (probes.emission.size() != n || df0.size() < n)
        throw std::invalid_argument("scc_series: probe/discount length mismatch");
    SccSeries out;
    out.scc.resize(n);
    out.scc_numeraire.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::fabs(probes.consumption[i]) > 1e-300))
            throw std::domain_error("scc_series: vanishing consumption adjoint");
        out.scc[i] = -1000.0 * probes.emission[i] / probes.consumption[i];
        out.scc_numeraire[i] = out.scc[i] * df0[i];
    }
    return out;
}

PathVector ramsey_rate(double eta, const PathVector& growth, const PathVector& rho) {
    return pv_add(pv_affine(growth, eta, 0.0), rho);
}

std::vector<PathVector> consumption_growth(const TimeGrid& grid, const Trajectory& traj) {
    const std::size_t n = traj.econ.size();
    std::vector<PathVector> g;
    g.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const PathVector ratio = pv_div(traj.econ[i + 1].cpc.val, traj.econ[i].cpc.val);
        g.push_back(pv_affine(pv_log(ratio), 1.0 / grid.dt(i), 0.0));
    }
    if (n == 1)
        g.emplace_back(0.0);
    else
        g.push_back(g.back());
    return g;
}

CohortTable cohort_burden_table(const TimeGrid& grid, const Trajectory& traj,
                                const RateSystem& rates, const LifetimeTable& pop,
                                double first_birth_year, double last_birth_year,
                                double reference) {
    pop.validate();
    if (!(reference > 0.0))
        throw std::invalid_argument("cohort_burden_table: reference must be positive");

    const std::size_t n = grid.steps();
    std::vector<PathVector> cost, gdp;
    cost.reserve(n);
    gdp.reserve(n);
    for (const NodeEcon& e : traj.econ) {
        cost.push_back(pv_add(e.ca.val, e.cd.val));
        gdp.push_back(e.y.val);
    }

    CohortTable table;
    table.reference = reference;
    table.population_fallback = pop.fallback;
    for (std::size_t s = 0; s < n; ++s) {
        const double year = grid.year(s);
        if (year < first_birth_year || year > last_birth_year) continue;
        const double tl = pop.life_expectancy(year);
        const LifetimeAverage c_bar = lifetime_average(grid, cost, rates.discount, s, tl);
        const LifetimeAverage g_bar = lifetime_average(grid, gdp, rates.discount, s, tl);
        const PathVector ratio = pv_div(c_bar.value, g_bar.value);
        table.rows.push_back({year, tl, pop.population(year), c_bar.truncated, pv_mean(ratio),
                              pv_quantile(ratio, 0.10), pv_quantile(ratio, 0.90)});
    }
    return table;
}

}  // namespace sdice
