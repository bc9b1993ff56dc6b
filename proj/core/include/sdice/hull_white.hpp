#pragma once

// One-factor Hull-White process for the time-preference rate, discretized
// exactly on the simulation grid.
//
//   d rho(t) = (theta(t) - a(t) rho(t)) dt + sigma(t) dW(t)
//
// with a, sigma, theta piecewise constant on grid intervals. One Brownian
// increment drives each step. The transition of rho is sampled from its exact
// Gaussian law; the integrated rate over the step is represented by its
// conditional mean given (rho_i, rho_{i+1}) plus a deterministic compensation
// of half the unspanned residual variance, so that discount factors are exact
// in expectation: E[exp(-Int rho)] equals the analytic bond at every node.
//
// The money-market numeraire N(t) = exp(Int_0^t rho ds) starts at N(0) = 1.
// With the (default) ensemble adjustment, each node's discount ensemble is
// rescaled by a path-independent constant so its Monte Carlo mean matches the
// analytic time-zero bond exactly, removing the residual sampling noise of the
// simulated numeraire. The adjustment does not depend on policy and is never
// differentiated through.

#include <cstddef>
#include <vector>

#include "sdice/brownian.hpp"
#include "sdice/path_vector.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

struct HullWhiteParams {
    double r0 = 0.015;          // rho(0)
    std::vector<double> a;      // mean-reversion speed per interval (>= 0)
    std::vector<double> sigma;  // volatility per interval (>= 0)
    std::vector<double> theta;  // drift level per interval
    bool adjust_discounts = true;

    static HullWhiteParams flat(const TimeGrid& grid, double a, double sigma, double r0,
                                double theta);
    void validate(const TimeGrid& grid) const;
};

class HullWhiteModel;

// Simulated rate environment: short-rate and discount ensembles per node, plus
// the model itself for pathwise bond / funding-rate evaluation.
struct RateSystem {
    std::vector<PathVector> rho;       // rho(t_i)
    std::vector<PathVector> discount;  // N(0)/N(t_i), ensemble-adjusted if enabled
    std::vector<double> adjustment;    // scaling applied per node (all 1 if disabled)
    std::size_t n_paths = 1;

    // Pathwise zero bond P(t_i, t_j) = exp(A - B rho(t_i)). ...
    PathVector zero_bond(std::size_t i, std::size_t j) const;
    // Simple-compounded funding rate fixed at t_i for [t_i, t_j]:
    // FR = (1/P(t_i,t_j) - 1)/(t_j - t_i), so (1 + FR*(t_j-t_i)) * P == 1 pathwise.
    PathVector forward_rate(std::size_t i, std::size_t j) const;

    const HullWhiteModel& model() const { return *model_; }

  private:
    friend class HullWhiteModel;
    std::shared_ptr<const HullWhiteModel> model_;
};

class HullWhiteModel {
  public:
    HullWhiteModel(TimeGrid grid, HullWhiteParams params);

    // Piecewise-constant theta such that the model's time-zero curve reproduces
    // the target log-discount L(t_k) = -ln P(0,t_k) at every grid node, via
    // forward substitution (the system is lower-triangular in theta). Throws if
    // the round-trip residual exceeds tolerance.
    static HullWhiteParams calibrate(const TimeGrid& grid, double a, double sigma, double r0,
                                     const std::vector<double>& target_log_discount);
    // Flat continuously-compounded target: L(t) = target * t, r0 = target.
    static HullWhiteParams calibrate_flat(const TimeGrid& grid, double a, double sigma,
                                          double target);

    const TimeGrid& grid() const { return grid_; }
    const HullWhiteParams& params() const { return params_; }

    double bond0(std::size_t i) const { return bond0_[i]; }
    double log_bond0(std::size_t i) const { return log_bond0_[i]; }
    // Certainty-equivalent forward rate on [t_i, t_{i+1}] implied by the
    // time-zero curve: -(ln P(0,t_{i+1}) - ln P(0,t_i)) / dt_i.
    double ce_rate(std::size_t i) const;

    struct BondCoeffs {
        double b_term;  // duration factor B(t_i, t_j)
        double a_term;  // log-level: P = exp(a_term - b_term * rho)
    };
    BondCoeffs bond_coeffs(std::size_t i, std::size_t j) const;

    // Exact-transition Monte Carlo of rho and the numeraire discounts.
    RateSystem simulate(const BrownianDriver& driver) const;
    // Deterministic variant; requires sigma == 0 on every interval.
    RateSystem simulate() const;

  private:
    RateSystem simulate_impl(const BrownianDriver* driver, std::size_t n_paths) const;

    TimeGrid grid_;
    HullWhiteParams params_;
    std::vector<double> bond0_, log_bond0_;
};

}  // namespace sdice
