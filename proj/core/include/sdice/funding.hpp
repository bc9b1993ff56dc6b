#pragma once

// Debt financing of abatement costs.
//
// Instead of hitting the budget when incurred, an abatement cost originated at
// node i is rebooked to later grid nodes with accrual at the pathwise funding
// rate fixed at origination: a tranche due at t_j costs
//     (1/m) * C(t_i) * (1 + (FR(t_i,t_j) + spread) * (t_j - t_i)),
// where FR is the simple-compounded zero rate implied by the node-i bond. With
// zero spread this is value-neutral path by path: discounting all tranches
// back to t_i with P(t_i, t_j) returns exactly C(t_i).
//
// single:  one tranche, maturity_years after origination.
// annuity: `tranches` equal repayments spread evenly over maturity_years.
//
// Off-grid due dates are rounded to the nearest grid node (ties later), never
// before the origination node. Tranches falling beyond the last production
// node are booked at that node (with accrual to it, preserving neutrality)
// and counted as truncated. maturity_years = 0 books the cost back at its own
// origination node, recovering the classical model exactly.

#include <cstddef>
#include <vector>

#include "sdice/hull_white.hpp"
#include "sdice/tape.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

enum class FundingMode { none, single, annuity };

struct FundingConfig {
    FundingMode mode = FundingMode::none;
    double maturity_years = 60.0;  // repayment horizon after origination
    int tranches = 60;             // annuity repayment count (single uses 1)
    double spread = 0.0;           // additive simple-rate spread, per year
    void validate() const;
};

class FundingEngine {
  public:
    FundingEngine(const TimeGrid& grid, const RateSystem& rates, FundingConfig cfg);

    // Book the cost incurred at node i into its repayment nodes. Call once per
    // node, in node order.
    void originate(std::size_t i, const Value& cost);

    // Total rebooked cost arriving at node i. Zero ensemble if nothing is due.
    Value arrivals(std::size_t i) const;

    std::size_t truncated_tranches() const { return truncated_; }
    const FundingConfig& config() const { return cfg_; }

  private:
    const TimeGrid* grid_;
    const RateSystem* rates_;
    FundingConfig cfg_;
    std::vector<std::vector<Value>> xs_;       // per arrival node: cost sources
    std::vector<std::vector<PathVector>> ws_;  // per arrival node: tranche weights
    std::size_t truncated_ = 0;
};

}  // namespace sdice
