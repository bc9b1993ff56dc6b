#pragma once

// Abatement policy families.
//
// A policy maps node time (and, for rate-responsive families, the simulated
// short rate) to the abatement fraction mu in [0, 1]. Parameters are exposed
// as named specs with bounds and step scales for the optimizer; bind() turns a
// parameter vector into differentiable tape leaves (or plain constants when no
// tape is given), after which mu() can be evaluated node by node.
//
// Families:
//   one_param          mu(t) = min(mu_initial + (1-mu_initial) t / T, 1).
//                      Full abatement is reached at t = T; T is the parameter.
//   linear_stochastic  mu(t) = clamp(mu_initial + (a0 + a1 rho(t)) t, 0, 1).
//                      The ramp speed responds linearly to the time-preference
//                      rate; a1 = 0 reduces to a deterministic ramp.
//   piecewise          One value per grid step; the first is pinned at
//                      mu_initial and the rest are free parameters in [0,1]
//                      (kept there by optimizer projection, not by clamping,
//                      so boundary gradients survive).

#include <memory>
#include <string>
#include <vector>

#include "sdice/tape.hpp"

namespace sdice {

struct ParamSpec {
    std::string name;
    double init;
    double lo;
    double hi;
    double step_scale;  // optimizer step size multiplier for this parameter
};

class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::string kind() const = 0;
    virtual std::vector<ParamSpec> param_specs() const = 0;
    // Install parameter values; leaves are recorded on `tape` if non-null.
    virtual void bind(Tape* tape, const std::vector<double>& x) = 0;
    // Abatement fraction at node i (t years since start; rho is the node's
    // short-rate ensemble). Requires bind().
    virtual Value mu(std::size_t i, double t, const Value& rho) const = 0;
    // The bound parameter leaves, in param_specs() order (for adjoint reads).
    virtual std::vector<const Value*> param_leaves() const = 0;
};

class OneParamPolicy final : public Policy {
  public:
    explicit OneParamPolicy(double mu_initial = 0.03, double t_full_init = 100.0);
    std::string kind() const override { return "one_param"; }
    std::vector<ParamSpec> param_specs() const override;
    void bind(Tape* tape, const std::vector<double>& x) override;
    Value mu(std::size_t i, double t, const Value& rho) const override;
    std::vector<const Value*> param_leaves() const override;

    double mu_initial() const { return mu_initial_; }

  private:
    double mu_initial_, t_full_init_;
    Value t_full_;  // the parameter leaf
    Value speed_;   // (1-mu_initial)/T, recorded once per bind
    bool bound_ = false;
};

class LinearStochasticPolicy final : public Policy {
  public:
    LinearStochasticPolicy(double mu_initial = 0.03, double a0_init = 0.0097,
                           double a1_init = 0.0);
    std::string kind() const override { return "linear_stochastic"; }
    std::vector<ParamSpec> param_specs() const override;
    void bind(Tape* tape, const std::vector<double>& x) override;
    Value mu(std::size_t i, double t, const Value& rho) const override;
    std::vector<const Value*> param_leaves() const override;

  private:
    double mu_initial_, a0_init_, a1_init_;
    Value a0_, a1_;
    bool bound_ = false;
};

class PiecewisePolicy final : public Policy {
  public:
    // One value per grid step; init gives the starting point for the free
    // values (index 0 is pinned to mu_initial and carries no parameter).
    PiecewisePolicy(std::size_t n_steps, double mu_initial, std::vector<double> init);
    std::string kind() const override { return "piecewise"; }
    std::vector<ParamSpec> param_specs() const override;
    void bind(Tape* tape, const std::vector<double>& x) override;
    Value mu(std::size_t i, double t, const Value& rho) const override;
    std::vector<const Value*> param_leaves() const override;

    // The leaf for step i >= 1 (for nodewise sensitivity sweeps).
    const Value& leaf(std::size_t i) const;

  private:
    std::size_t n_steps_;
    double mu_initial_;
    std::vector<double> init_;
    std::vector<Value> values_;
    bool bound_ = false;
};

}  // namespace sdice
