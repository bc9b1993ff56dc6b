// DICE-2016R calibration, transcribed from W. Nordhaus' DICE2016R GAMS source
// (DICE2016R-091916ap.gms). Values are verbatim; comments give the GAMS
// parameter they correspond to. Rates that GAMS applies per five-year period
// keep that convention where the comment says so; per-year rates are per year.

#include "sdice/dice_params.hpp"

namespace sdice {

DiceParams DiceParams::dice2016() {
    DiceParams p;

    // Preferences
    p.elasmu = 1.45;   // elasmu: elasticity of marginal utility of consumption
    p.prstp = 0.015;   // prstp: initial rate of social time preference per year
    p.utility_scale = 1.0;  // objective reported in natural utils (GAMS rescales)

    // Population and technology
    p.pop0 = 7403.0;     // pop0: initial world population 2015 (millions)
    p.popadj = 0.134;    // popadj: growth rate to calibrate to 2050 pop projection
    p.popasym = 11500.0; // popasym: asymptotic population (millions)
    p.a0 = 5.115;        // a0: initial level of total factor productivity
    p.ga0 = 0.076;       // ga0: initial growth rate for TFP per 5 years
    p.dela = 0.005;      // dela: decline rate of TFP growth per year

    p.gama = 0.300;  // gama: capital elasticity in production function
    p.dk = 0.100;    // dk: depreciation rate on capital (per year)
    p.k0 = 223.0;    // k0: initial capital value (trill 2010 USD)
    p.q0 = 105.5;    // q0: initial world gross output (trill 2010 USD)

    // Emissions
    p.e0 = 35.85;       // e0: industrial emissions 2015 (GtCO2 per year)
    p.miu0 = 0.03;      // miu0: initial emissions control rate for base case 2015
    p.gsigma1 = -0.0152;  // gsigma1: initial growth of sigma (per year)
    p.dsig = -0.001;    // dsig: decline rate of decarbonization (per period)
    p.eland0 = 2.6;     // eland0: carbon emissions from land 2015 (GtCO2 per year)
    p.deland = 0.115;   // deland: decline rate of land emissions (per period)

    // Carbon cycle
    p.mat0 = 851.0;        // mat0: initial concentration in atmosphere 2015 (GtC)
    p.mu0_carbon = 460.0;  // mu0: initial concentration in upper strata 2015 (GtC)
    p.ml0 = 1740.0;        // ml0: initial concentration in lower strata 2015 (GtC)
    p.mateq = 588.0;       // mateq: equilibrium concentration atmosphere (GtC)
    p.mueq = 360.0;        // mueq: equilibrium concentration in upper strata (GtC)
    p.mleq = 1720.0;       // mleq: equilibrium concentration in lower strata (GtC)
    p.b12 = 0.12;          // b12: carbon cycle transition matrix
    p.b23 = 0.007;         // b23: carbon cycle transition matrix

    // Climate model
    p.t2xco2 = 3.1;     // t2xco2: equilibrium temp impact (K per doubling CO2)
    p.fco22x = 3.6813;  // fco22x: forcings of equilibrium CO2 doubling (Wm-2)
    p.tatm0 = 0.85;     // tatm0: initial atmospheric temp change (K from 1900)
    p.tocean0 = 0.0068; // tocean0: initial lower stratum temp change (K from 1900)
    p.c1 = 0.1005;      // c1: climate equation coefficient for upper level
    p.c3 = 0.088;       // c3: transfer coefficient upper to lower stratum
    p.c4 = 0.025;       // c4: transfer coefficient for lower level
    p.fex0 = 0.5;       // fex0: 2015 forcings of non-CO2 GHG (Wm-2)
    p.fex1 = 1.0;       // fex1: 2100 forcings of non-CO2 GHG (Wm-2)
    p.fex_ramp_years = 85.0;  // GAMS ramps forcoth linearly over periods 1..18

    // Damages
    p.a2 = 0.00236;  // a2: damage quadratic term
    p.a3 = 2.00;     // a3: damage exponent

    // Abatement cost
    p.expcost2 = 2.6;  // expcost2: exponent of control cost function
    p.pback = 550.0;   // pback: cost of backstop 2010$ per tCO2 2015
    p.gback = 0.025;   // gback: initial cost decline backstop cost per period
    p.limmiu = 1.0;    // limmiu: upper limit on control rate (no negative emissions)

    p.cons_floor = 1e-4;  // consumption floor guarding the CRRA singularity
    p.co2_per_c = 3.666;  // GAMS converts E (GtCO2) into carbon stocks via /3.666

    return p;
}

}  // namespace sdice
