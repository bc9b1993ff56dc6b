#pragma once

// Population and life-expectancy projections for cohort burden tables.
//
// The source file is a CSV with header `year,population_millions,
// life_expectancy_years` covering 2015-2100. Queries interpolate linearly
// between data years and hold the boundary values constant outside the data
// range (in particular, beyond 2100 both population and life expectancy stay
// at their 2100 levels). When no file is available, constant_fallback()
// supplies a flat table flagged via `fallback`, and the flag is propagated
// into run manifests so downstream readers can tell projected from assumed.

#include <string>
#include <vector>

namespace sdice {

struct LifetimeTable {
    struct Row {
        double year;
        double population_millions;
        double life_expectancy_years;
    };

    std::vector<Row> rows;  // strictly increasing years
    bool fallback = false;

    double population(double year) const;
    double life_expectancy(double year) const;

    void validate() const;

    static LifetimeTable load_csv(const std::string& path);
    static LifetimeTable constant_fallback();
};

}  // namespace sdice
