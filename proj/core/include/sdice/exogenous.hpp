#pragma once

// Exogenous model schedules evaluated on the simulation grid.
//
// DICE defines population, productivity and emission intensity through
// five-year recursions. To make these grid-independent -- and to recover the
// published five-year trajectories exactly when simulating with dt = 5 -- the
// recursions are evaluated once on their native five-year lattice and then
// interpolated geometrically (linear in log space) at arbitrary node times.
// Schedules with closed forms (land-use emissions, exogenous forcing, backstop
// price) are evaluated directly at continuous time.

#include <vector>

#include "sdice/dice_params.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

struct ExogenousPaths {
    std::vector<double> pop;      // L(t), millions
    std::vector<double> tfp;      // A(t)
    std::vector<double> sigma;    // emission intensity, GtCO2 per trillion USD
    std::vector<double> eland;    // land-use emissions, GtCO2 per year
    std::vector<double> forc_ex;  // exogenous non-CO2 forcing, W/m2
    std::vector<double> pback;    // backstop price, USD per tCO2
    std::vector<double> theta1;   // abatement cost coefficient of mu^expcost2

    static ExogenousPaths build(const TimeGrid& grid, const DiceParams& p);
};

}  // namespace sdice
