#include "sdice/funding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdice {

void FundingConfig::validate() const {
    if (mode == FundingMode::none) return;
    if (!std::isfinite(maturity_years) || maturity_years < 0.0)
        throw std::invalid_argument("funding: maturity_years must be non-negative");
    const int m = mode == FundingMode::single ? 1 : tranches;
    if (m < 1) throw std::invalid_argument("funding: need at least one tranche");
    if (!std::isfinite(spread) || spread < 0.0)
        throw std::invalid_argument("funding: spread must be a non-negative rate");
}

FundingEngine::FundingEngine(const TimeGrid& grid, const RateSystem& rates, FundingConfig cfg)
    : grid_(&grid), rates_(&rates), cfg_(cfg) {
    cfg_.validate();
    if (cfg_.mode == FundingMode::none)
        throw std::invalid_argument("funding: engine requires an active mode");
    xs_.resize(grid.steps());
    ws_.resize(grid.steps());
}

void FundingEngine::originate(std::size_t i, const Value& cost) {
    const std::size_t last = grid_->steps() - 1;  // final production node
    if (i > last) throw std::out_of_range("funding: origination outside grid");

    const int m = cfg_.mode == FundingMode::single ? 1 : cfg_.tranches;
    const double share = 1.0 / static_cast<double>(m);

    for (int k = 1; k <= m; ++k) {
        const double due = grid_->t(i) + cfg_.maturity_years * static_cast<double>(k) /
                                             static_cast<double>(m);
        // Nearest grid node to the due date (ties round later), never before
        // the origination node, capped at the final production node.
        std::size_t j = i;
        while (j < last && grid_->t(j) < due) ++j;
        if (grid_->t(j) < due) {
            ++truncated_;  // due beyond the horizon cap
        } else if (j > i && due - grid_->t(j - 1) < grid_->t(j) - due) {
            --j;  // strictly nearer to the previous node
        }

        const double tau = grid_->t(j) - grid_->t(i);
        PathVector w;
        if (tau > 0.0) {
            // share * (1 + (FR + spread) * tau)
            w = pv_affine(rates_->forward_rate(i, j), share * tau,
                          share * (1.0 + cfg_.spread * tau));
        } else {
            w = PathVector(share);  // due immediately (origination at the cap)
        }
        xs_[j].push_back(cost);
        ws_[j].push_back(std::move(w));
    }
}

Value FundingEngine::arrivals(std::size_t i) const {
    if (i >= xs_.size()) throw std::out_of_range("funding: arrival node outside grid");
    if (xs_[i].empty()) return Value(0.0);
    return lincomb(xs_[i], ws_[i]);
}

}  // namespace sdice
