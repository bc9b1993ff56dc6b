#include "sdice/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sdice {

TimeGrid::TimeGrid(double start_year, std::vector<double> node_times)
    : start_year_(start_year), t_(std::move(node_times)) {
    if (t_.size() < 2) throw std::invalid_argument("TimeGrid: need at least two nodes");
    if (t_.front() != 0.0) throw std::invalid_argument("TimeGrid: first node must be t=0");
    for (std::size_t i = 0; i + 1 < t_.size(); ++i)
        if (!(t_[i + 1] > t_[i]))
            throw std::invalid_argument("TimeGrid: node times must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double start_year, double horizon_years, double dt) {
    if (!(dt > 0.0) || !(horizon_years > 0.0))
        throw std::invalid_argument("TimeGrid: horizon and dt must be positive");
    const double steps_real = horizon_years / dt;
    const std::size_t n = static_cast<std::size_t>(std::llround(steps_real));
    if (n == 0 || std::abs(steps_real - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument("TimeGrid: horizon must be an integer number of steps");
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = dt * static_cast<double>(i);
    t[n] = horizon_years;
    return TimeGrid(start_year, std::move(t));
}

}  // namespace sdice
