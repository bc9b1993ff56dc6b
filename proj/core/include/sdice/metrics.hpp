#pragma once

// Equity and pricing metrics over completed trajectories.
//
// Conventions, fixed here once:
//   * "Cost" is the booked total C = C_A + C_D; "GDP" is net output Y, the
//     budget that actually carries the cost. Both are per-year flows.
//   * Lifetime averages are numeraire-weighted window integrals
//     x_bar(s) = Int_s^{s+TL} x(t) N(s)/N(t) dt, trapezoidal on the grid with
//     linear interpolation of the partial end segment; windows reaching past
//     the last production node are clipped there and flagged. Pathwise ratios
//     of such integrals (cost over GDP) are what cohort tables report.
//   * The gamma density weights nodewise cost sensitivities with the welfare
//     adjoints of consumption shifts; at a policy optimum its integral is 1
//     (the costs' marginal reallocation balances), and its first moment t_D
//     is the expected time of damage per unit of abatement cost.
//   * SCC converts the emission-shift adjoint into consumption units:
//     -1000 * adjE / adjC in USD/tCO2 (flows are trillion USD/yr and
//     GtCO2/yr, hence the factor). The numeraire-relative variant multiplies
//     by the time-zero discount factor of the node.

#include <cstddef>
#include <vector>

#include "sdice/dice_model.hpp"
#include "sdice/population.hpp"
#include "sdice/sensitivity.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

// Booked total cost per net output, per production node. Throws if net output
// is not strictly positive somewhere.
std::vector<PathVector> cost_per_gdp(const Trajectory& traj);

struct LifetimeAverage {
    PathVector value;
    bool truncated = false;
};

// series: one entry per production node; discount: N(0)/N(t) on all nodes
// (the rate system's ensembles). s_node indexes the birth node.
LifetimeAverage lifetime_average(const TimeGrid& grid, const std::vector<PathVector>& series,
                                 const std::vector<PathVector>& discount, std::size_t s_node,
                                 double lifetime_years);

struct GammaDensity {
    std::size_t s_node = 0;
    std::vector<double> value;  // per production node, 1/yr; exactly 0 for t < s
};

// Weighted damage-per-abatement density of a marginal policy change at node s.
GammaDensity gamma_density(const TimeGrid& grid, std::size_t s_node,
                           const CostSensitivities& sens);
double density_integral(const TimeGrid& grid, const GammaDensity& g);
double expected_damage_time(const TimeGrid& grid, const GammaDensity& g);  // first moment

struct SccSeries {
    std::vector<double> scc;            // USD/tCO2
    std::vector<double> scc_numeraire;  // discounted to time zero
};

// df0: expected time-zero discount factor per production node.
SccSeries scc_series(const AdjointProbes& probes, const std::vector<double>& df0);

// Social discount rate r = eta * g + rho, pathwise.
PathVector ramsey_rate(double eta, const PathVector& growth, const PathVector& rho);

// Per-capita consumption growth d/dt ln(cpc) per production node (forward
// difference; the last node repeats its predecessor).
std::vector<PathVector> consumption_growth(const TimeGrid& grid, const Trajectory& traj);

struct CohortRow {
    double birth_year;
    double lifetime_years;
    double population_millions;
    bool truncated;
    double mean, p10, p90;  // lifetime cost per lifetime GDP (raw fraction)
};

struct CohortTable {
    std::vector<CohortRow> rows;
    double reference = 0.03;  // burden level the rows are compared against
    bool population_fallback = false;
};

// One row per production node whose calendar year falls in
// [first_birth_year, last_birth_year].
CohortTable cohort_burden_table(const TimeGrid& grid, const Trajectory& traj,
                                const RateSystem& rates, const LifetimeTable& pop,
                                double first_birth_year = 2015.0,
                                double last_birth_year = 2200.0, double reference = 0.03);

}  // namespace sdice
