#include "sdice/dice_params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdice {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("DiceParams: " + what);
}

}  // namespace

void DiceParams::validate() const {
    require(elasmu > 0.0, "elasmu must be positive");
    require(prstp > 0.0, "prstp must be positive");
    require(utility_scale > 0.0, "utility_scale must be positive");
    require(pop0 > 0.0 && popasym > 0.0, "population levels must be positive");
    require(popadj > 0.0 && popadj < 1.0, "popadj must lie in (0,1)");
    require(a0 > 0.0, "a0 must be positive");
    require(gama > 0.0 && gama < 1.0, "gama must lie in (0,1)");
    require(dk > 0.0 && dk < 1.0, "dk must lie in (0,1)");
    require(k0 > 0.0 && q0 > 0.0, "initial capital and output must be positive");
    require(e0 > 0.0, "e0 must be positive");
    require(miu0 >= 0.0 && miu0 < 1.0, "miu0 must lie in [0,1)");
    require(eland0 >= 0.0, "eland0 must be non-negative");
    require(mat0 > 0.0 && mu0_carbon > 0.0 && ml0 > 0.0, "carbon stocks must be positive");
    require(mateq > 0.0 && mueq > 0.0 && mleq > 0.0, "carbon equilibria must be positive");
    require(b12 > 0.0 && b12 < 1.0, "b12 must lie in (0,1)");
    require(b23 > 0.0 && b23 < 1.0, "b23 must lie in (0,1)");
    require(t2xco2 > 0.0, "t2xco2 must be positive");
    require(fco22x > 0.0, "fco22x must be positive");
    require(c1 > 0.0 && c3 > 0.0 && c4 > 0.0, "climate coefficients must be positive");
    require(fex_ramp_years > 0.0, "fex_ramp_years must be positive");
    require(a2 >= 0.0, "a2 must be non-negative");
    require(a3 > 0.0, "a3 must be positive");
    require(expcost2 > 1.0, "expcost2 must exceed 1 (convex abatement cost)");
    require(pback > 0.0, "pback must be positive");
    require(limmiu > 0.0 && limmiu <= 1.0, "limmiu must lie in (0,1]");
    require(cons_floor > 0.0, "cons_floor must be positive");
    require(co2_per_c > 0.0, "co2_per_c must be positive");

    // Carbon-cycle mass balance: derived off-diagonal entries must keep every
    // five-year row sum in [0,1].
    const double b21 = b12 * mateq / mueq;
    const double b32 = b23 * mueq / mleq;
    require(b21 + b23 < 1.0, "carbon transfer out of the upper ocean exceeds its stock");
    require(b32 < 1.0, "carbon transfer out of the lower ocean exceeds its stock");
}

}  // namespace sdice
