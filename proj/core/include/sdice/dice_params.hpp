#pragma once

// Economic and geophysical parameters of the climate-economy model.
//
// Field names follow the published DICE-2016R GAMS source so values can be
// cross-checked line by line; dice2016() (dice2016_calibration.cpp) carries
// the calibration verbatim. Time-rate conventions are normalized here to
// *per year* where DICE's five-year step hides a factor: each field's comment
// states its unit.

#include <string>

namespace sdice {

struct DiceParams {
    // --- preferences ---
    double elasmu = 1.45;        // marginal utility elasticity (CRRA curvature)
    double prstp = 0.015;        // pure rate of social time preference, per year
    double utility_scale = 1.0;  // multiplicative objective scaling (reporting)

    // --- population (millions) and productivity; five-year lattice recursions ---
    double pop0 = 7403.0;    // 2015 population
    double popasym = 11500.0;  // asymptotic population
    double popadj = 0.134;   // convergence exponent per five-year period
    double a0 = 5.115;       // initial total factor productivity
    double ga0 = 0.076;      // initial TFP growth per five-year period
    double dela = 0.005;     // TFP growth decline rate, per year

    // --- economy ---
    double gama = 0.300;  // capital elasticity in production
    double dk = 0.100;    // capital depreciation, per year
    double k0 = 223.0;    // 2015 capital stock, trillion 2010 USD
    double q0 = 105.5;    // 2015 gross output, trillion 2010 USD

    // --- emissions ---
    double e0 = 35.85;       // 2015 industrial emissions, GtCO2 per year
    double miu0 = 0.03;      // 2015 abatement fraction
    double gsigma1 = -0.0152;  // initial decline rate of emission intensity, per year
    double dsig = -0.001;    // decline of the decline rate, per year
    double eland0 = 2.6;     // 2015 land-use emissions, GtCO2 per year
    double deland = 0.115;   // land-use emission decline per five-year period

    // --- carbon cycle (GtC stocks; b-coefficients per five-year period) ---
    double mat0 = 851.0, mu0_carbon = 460.0, ml0 = 1740.0;    // 2015 reservoirs
    double mateq = 588.0, mueq = 360.0, mleq = 1720.0;        // equilibria
    double b12 = 0.12;   // atmosphere -> upper ocean
    double b23 = 0.007;  // upper -> lower ocean

    // --- climate ---
    double t2xco2 = 3.1;    // equilibrium climate sensitivity, K per CO2 doubling
    double fco22x = 3.6813; // forcing of a CO2 doubling, W/m2
    double tatm0 = 0.85;    // 2015 atmospheric temperature anomaly, K
    double tocean0 = 0.0068;  // 2015 deep-ocean temperature anomaly, K
    double c1 = 0.1005;     // temperature equation speed, per five-year period
    double c3 = 0.088;      // atmosphere-ocean exchange coefficient
    double c4 = 0.025;      // deep-ocean uptake, per five-year period
    double fex0 = 0.5;      // 2015 exogenous non-CO2 forcing, W/m2
    double fex1 = 1.0;      // 2100 exogenous forcing, W/m2
    double fex_ramp_years = 85.0;  // linear ramp length of exogenous forcing

    // --- damages: fraction of gross output lost = a2 * T^a3, capped at 1 ---
    double a2 = 0.00236;  // damage coefficient, per K^2
    double a3 = 2.0;      // damage exponent

    // --- abatement cost: fraction of gross output = theta1(t) * mu^expcost2 ---
    double expcost2 = 2.6;  // abatement cost curvature
    double pback = 550.0;   // 2015 backstop price, USD per tCO2
    double gback = 0.025;   // backstop price decline per five-year period
    double limmiu = 1.0;    // abatement fraction upper bound

    // --- numerics ---
    double cons_floor = 1e-4;  // per-capita consumption floor (thousand USD/yr)

    // GtCO2 per GtC: carbon-cycle stocks are in carbon units.
    double co2_per_c = 3.666;

    // 2015 emission intensity implied by output, emissions and abatement.
    double sig0() const { return e0 / (q0 * (1.0 - miu0)); }
    // Forcing-balance temperature feedback, W/m2 per K.
    double lambda_forcing() const { return fco22x / t2xco2; }
    // DICE's fixed gross savings rate (the long-run optimum of the Ramsey rule).
    double optlrsav() const {
        return (dk + 0.004) / (dk + 0.004 * elasmu + prstp) * gama;
    }

    // Throws std::invalid_argument naming the first offending field.
    void validate() const;

    // The DICE-2016R calibration.
    static DiceParams dice2016();
};

}  // namespace sdice
