#pragma once

// Simulation time grid: strictly increasing node times in years, measured from a
// calendar start year. t(0) == 0 is the valuation date; the default experiment
// grid is annual over 500 years starting in 2015 (501 nodes, 500 steps).

#include <cstddef>
#include <vector>

namespace sdice {

class TimeGrid {
  public:
    TimeGrid(double start_year, std::vector<double> node_times);

    static TimeGrid uniform(double start_year, double horizon_years, double dt);

    std::size_t nodes() const { return t_.size(); }
    std::size_t steps() const { return t_.size() - 1; }

    double t(std::size_t i) const { return t_[i]; }           // years since start
    double dt(std::size_t i) const { return t_[i + 1] - t_[i]; }  // step i -> i+1
    double start_year() const { return start_year_; }
    double year(std::size_t i) const { return start_year_ + t_[i]; }
    double horizon() const { return t_.back(); }

    const std::vector<double>& times() const { return t_; }

  private:
    double start_year_;
    std::vector<double> t_;
};

}  // namespace sdice
