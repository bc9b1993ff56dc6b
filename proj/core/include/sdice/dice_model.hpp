#pragma once

// The climate-economy model: an explicit scheme for the time-continuous
// DICE-2016 dynamics over an arbitrary grid, evaluated on ensembles. The
// linear state blocks (carbon boxes, temperature boxes, capital) advance by
// the exact fractional power of their five-year GAMS transitions, and the
// sources (emissions, forcing, investment) enter through the zero-order-hold
// response of the same transitions, normalized so a five-year step carries
// the literal GAMS loading. Consequence: a five-year grid reproduces the
// published recursion with its exact coefficients, and any refinement of it
// composes back to the same five-year nodes exactly when sources are frozen
// -- grids differ only through genuine source resampling, which is why a
// finer discretization moves trajectories very little.
//
// One simulate() call walks the grid once, computing production-node
// economics (nodes 0..steps-1) and advancing the state block (defined on all
// nodes). Every quantity is a Value: if the policy (or a shift leaf) is
// recorded on a tape, the dependency cone downstream of it is recorded too,
// and a backward sweep from welfare -- or from any per-node cost -- yields
// adjoint sensitivities. With an unbound policy nothing records and a call is
// a plain (cheap) evaluation, which is what the finite-difference oracles use.
//
// Extensions: abatement costs can be rebooked through a FundingEngine (fresh
// per call; truncation count lands in the diagnostics), and damage costs can
// be scaled by the default-compensation factor with a gross-output- or
// numeraire-normalized trigger. `affects_output = false` keeps the
// compensated excess out of the budget: it then shows up only in the reported
// damage cost C_D, never in net output, consumption, or welfare.

#include <array>
#include <cstddef>
#include <vector>

#include "sdice/compensator.hpp"
#include "sdice/dice_params.hpp"
#include "sdice/exogenous.hpp"
#include "sdice/funding.hpp"
#include "sdice/hull_white.hpp"
#include "sdice/policy.hpp"
#include "sdice/tape.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

// Zero-valued leaves added to chosen flows so a single welfare sweep yields
// localized marginal effects: d welfare / d emission[i] is the adjoint of one
// extra GtCO2/yr emitted over step i, d welfare / d consumption[i] that of one
// extra trillion USD/yr consumed (bypassing investment). Values are zero, so
// trajectories are unchanged; only tape structure is added.
struct ShiftLeaves {
    std::vector<Value> emission;     // added to industrial emissions at node i
    std::vector<Value> consumption;  // added to consumption at node i

    static ShiftLeaves make(Tape& tape, std::size_t n_steps);
};

// Economic quantities at one production node. Flows are per year; costs and
// outputs in trillion USD/yr, emissions in GtCO2/yr.
struct NodeEcon {
    Value mu;       // abatement fraction
    Value ygross;   // gross output
    Value damfrac;  // damage fraction of gross output (capped at 1)
    Value eind;     // industrial emissions
    Value etot;     // total emissions (industrial + land use)
    Value cmu;      // instantaneous abatement cost C_mu
    Value ca;       // booked abatement cost C_A (equals cmu without funding)
    Value cd0;      // pre-compensation damage cost
    Value cd;       // booked damage cost C_D (equals cd0 without compensator)
    Value y;        // net output (gross - booked damage - booked abatement)
    Value cons;     // consumption
    Value cpc;      // per-capita consumption, thousand USD/person/yr (floored)
    Value util;     // population-weighted utility flow V(t)
};

struct Diagnostics {
    std::size_t cpc_floor_hits = 0;      // (path, node) pairs at the consumption floor
    std::size_t damfrac_clamp_hits = 0;  // (path, node) pairs with damage capped at 100%
    std::size_t truncated_tranches = 0;  // funding tranches rebooked to the final node
};

struct Trajectory {
    std::vector<NodeEcon> econ;  // production nodes 0..steps-1
    // States on all grid nodes 0..steps. Carbon stocks in GtC, temperatures in
    // K above preindustrial, capital in trillion USD.
    std::vector<Value> k, mat, mup, mlo, tatm, tocean;
    Value welfare;  // scalar: utility_scale * E[ sum_i V(t_i) DF_i dt_i ]
    Diagnostics diag;
};

struct ModelConfig {
    const RateSystem* rates = nullptr;  // required
    Policy* policy = nullptr;           // required; bind() before simulate()
    // Gross savings rate: empty -> optlrsav() constant; one entry -> that rate
    // everywhere; steps() entries -> per-node schedule.
    std::vector<Value> savings;
    const FundingConfig* funding = nullptr;          // optional extension
    const CompensatorConfig* compensator = nullptr;  // optional extension
    ShiftLeaves* shifts = nullptr;                   // optional adjoint probes
};

class DiceModel {
  public:
    DiceModel(TimeGrid grid, DiceParams params);

    const TimeGrid& grid() const { return grid_; }
    const DiceParams& params() const { return params_; }
    const ExogenousPaths& exogenous() const { return exo_; }

    Trajectory simulate(const ModelConfig& cfg) const;

  private:
    // Exact fractional powers of the five-year linear transitions plus the
    // matching zero-order-hold source loadings, one entry per step (verbatim
    // GAMS coefficients when dt == 5).
    struct StepPropagators {
        std::array<std::array<double, 3>, 3> carbon;  // (mat, mup, mlo)
        std::array<double, 3> carbon_load;            // x total emissions
        std::array<std::array<double, 2>, 2> temp;    // (tatm, tocean)
        std::array<double, 2> temp_load;              // x forcing
        double k_load;                                // x investment
    };

    TimeGrid grid_;
    DiceParams params_;
    ExogenousPaths exo_;
    std::vector<StepPropagators> prop_;
};

}  // namespace sdice
