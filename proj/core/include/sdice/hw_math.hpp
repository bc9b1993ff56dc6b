#pragma once

// Numerically stable building blocks for exponential-decay integrals.
//
// Everything the exact one-factor mean-reverting step and its bond formulas
// need reduces to four dimensionless shape functions of x = a*dt:
//
//   h1(x) = (1 - e^-x)/x                                 -> 1    as x -> 0
//   h2(x) = (x - 1 + e^-x)/x^2                           -> 1/2
//   h3(x) = (x - 2(1-e^-x) + (1-e^-2x)/2)/x^3            -> 1/3
//   h4(x) = ((1-e^-x) - (1-e^-2x)/2)/x^2                 -> 1/2
//
// in terms of which, with B(u) = (1-e^-au)/a:
//   B(dt)                  = dt   * h1(a dt)
//   int_0^dt B(u)    du    = dt^2 * h2(a dt)
//   int_0^dt B(u)^2  du    = dt^3 * h3(a dt)
//   int_0^dt B(u)e^-au du  = dt^2 * h4(a dt)
//   int_0^dt e^-2au  du    = dt   * h1(2 a dt)
//
// Each h uses its Taylor series for small |x| (no catastrophic cancellation at
// a -> 0) and the closed form via expm1 otherwise.

namespace sdice::hw {

double h1(double x);
double h2(double x);
double h3(double x);
double h4(double x);

// The named integrals above, safe for a == 0.
double b_factor(double a, double dt);    // B(dt)
double int_b(double a, double dt);       // int B du
double int_b2(double a, double dt);      // int B^2 du
double int_b_exp(double a, double dt);   // int B e^{-au} du
double int_exp2(double a, double dt);    // int e^{-2au} du

}  // namespace sdice::hw
