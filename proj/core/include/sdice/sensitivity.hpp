#pragma once

// Objective assembly and adjoint sensitivity sweeps over full simulations.
//
// WelfareObjective evaluates expected discounted welfare as a function of the
// policy parameter vector on a frozen rate ensemble (sample-average
// approximation: the same draws every iteration, so the stochastic objective
// is a deterministic function during optimization). Each gradient evaluation
// records one fresh tape and runs one backward sweep; tape-free evaluation is
// available for finite-difference oracles.
//
// The sweep helpers answer "where do marginal costs land in time": nodewise
// matrices d E[C_A(t)] / d mu(s), d E[C_D(t)] / d mu(s) over a piecewise
// policy (total derivatives through the full recursion -- capital, climate and
// booking channels included; one backward call per node and cost kind on a
// shared tape), welfare adjoints of the per-node consumption/emission shifts,
// and the reduced one-parameter curves d E[C(t)] / d T.

#include <cstddef>
#include <vector>

#include "sdice/adam.hpp"
#include "sdice/dice_model.hpp"

namespace sdice {

class WelfareObjective {
  public:
    // All referenced objects must outlive the objective; the policy is rebound
    // on every evaluation.
    WelfareObjective(const DiceModel& model, const RateSystem& rates, Policy& policy);

    void set_funding(const FundingConfig* cfg) { funding_ = cfg; }
    void set_compensator(const CompensatorConfig* cfg) { compensator_ = cfg; }
    // Gross savings rate override: empty = long-run optimal constant; one
    // entry = that rate everywhere; steps() entries = per-node schedule.
    void set_savings(std::vector<double> savings) { savings_ = std::move(savings); }

    double value(const std::vector<double>& x) const;  // tape-free
    double value_and_gradient(const std::vector<double>& x, std::vector<double>& grad) const;
    Trajectory simulate(const std::vector<double>& x, Tape* tape,
                        ShiftLeaves* shifts = nullptr) const;

    ObjectiveFn fn() const;  // adapter for adam_maximize

    const DiceModel& model() const { return *model_; }
    const RateSystem& rates() const { return *rates_; }
    Policy& policy() const { return *policy_; }

  private:
    const DiceModel* model_;
    const RateSystem* rates_;
    Policy* policy_;
    const FundingConfig* funding_ = nullptr;
    const CompensatorConfig* compensator_ = nullptr;
    std::vector<double> savings_;
};

// Box bounds and step scales lifted from the policy's parameter specs; other
// fields keep their defaults.
AdamConfig make_adam_config(const std::vector<ParamSpec>& specs);
std::vector<double> initial_params(const std::vector<ParamSpec>& specs);

// Welfare adjoints of the zero-valued per-node shifts, from one recorded
// simulation and one backward sweep:
//   consumption[i] = d welfare / d (extra trillion USD/yr consumed over step i)
//   emission[i]    = d welfare / d (extra GtCO2/yr emitted over step i)
struct AdjointProbes {
    std::vector<double> consumption;
    std::vector<double> emission;
};

AdjointProbes welfare_shift_adjoints(const WelfareObjective& objective,
                                     const std::vector<double>& x);

// Nodewise booked-cost sensitivities at a fixed abatement path, evaluated on a
// piecewise policy (node 0 pinned at mu_initial, free values mu_free[s-1]).
// dca[t][s], dcd[t][s]: derivatives of the expected booked costs at production
// node t with respect to mu(s), s >= 1; column 0 is identically zero (pinned).
// welfare_weight[t] is the consumption-shift adjoint from the same tape.
struct CostSensitivities {
    std::vector<std::vector<double>> dca, dcd;
    std::vector<double> welfare_weight;
};

CostSensitivities nodewise_cost_sensitivities(const DiceModel& model, const RateSystem& rates,
                                              double mu_initial,
                                              const std::vector<double>& mu_free);

// Reduced-model curves for the one-parameter ramp: derivatives of the expected
// booked costs at every production node with respect to the full-abatement
// time T, plus the matching welfare weights.
struct ReducedSensitivities {
    std::vector<double> dca_dT, dcd_dT;
    std::vector<double> welfare_weight;
};

ReducedSensitivities reduced_model_sensitivities(const DiceModel& model, const RateSystem& rates,
                                                 double mu_initial, double t_full);

}  // namespace sdice
