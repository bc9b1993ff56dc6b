#include "sdice/hw_math.hpp"

#include <cmath>

namespace sdice::hw {

namespace {

constexpr double series_cutoff = 0.5;

}  // namespace

double h1(double x) {
    // -expm1(-x)/x is cancellation-free for every x; only x == 0 needs care.
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

double h2(double x) {
    if (std::abs(x) < series_cutoff) {
        // sum_{k>=0} (-x)^k / (k+2)!
        double term = 0.5;  // k = 0
        double sum = term;
        for (int k = 1; k <= 18; ++k) {
            term *= -x / static_cast<double>(k + 2);
            sum += term;
        }
        return sum;
    }
    return (x + std::expm1(-x)) / (x * x);
}

double h3(double x) {
    if (std::abs(x) < series_cutoff) {
        // sum_{k>=3} (-1)^k (2 - 2^{k-1})/k! * x^{k-3} = 1/3 - x/4 + 7x^2/60 - ...
        double sum = 0.0;
        double sign = -1.0;           // (-1)^k at k=3
        double pow2 = 4.0;            // 2^{k-1} at k=3
        double fact = 6.0;            // k! at k=3
        double xp = 1.0;              // x^{k-3}
        for (int k = 3; k <= 24; ++k) {
            sum += sign * (2.0 - pow2) / fact * xp;
            sign = -sign;
            pow2 *= 2.0;
            fact *= static_cast<double>(k + 1);
            xp *= x;
        }
        return sum;
    }
    const double a1 = -std::expm1(-x);        // 1 - e^-x
    const double a2 = -std::expm1(-2.0 * x);  // 1 - e^-2x
    return (x - 2.0 * a1 + 0.5 * a2) / (x * x * x);
}

double h4(double x) {
    if (std::abs(x) < series_cutoff) {
        // sum_{k>=2} (-1)^{k+1} (1 - 2^{k-1})/k! * x^{k-2} = 1/2 - x/2 + 7x^2/24 - ...
        double sum = 0.0;
        double sign = -1.0;  // (-1)^{k+1} at k=2
        double pow2 = 2.0;   // 2^{k-1} at k=2
        double fact = 2.0;   // k! at k=2
        double xp = 1.0;     // x^{k-2}
        for (int k = 2; k <= 24; ++k) {
            sum += sign * (1.0 - pow2) / fact * xp;
            sign = -sign;
            pow2 *= 2.0;
            fact *= static_cast<double>(k + 1);
            xp *= x;
        }
        return sum;
    }
    const double a1 = -std::expm1(-x);
    const double a2 = -std::expm1(-2.0 * x);
    return (a1 - 0.5 * a2) / (x * x);
}

double b_factor(double a, double dt) { return dt * h1(a * dt); }
double int_b(double a, double dt) { return dt * dt * h2(a * dt); }
double int_b2(double a, double dt) { return dt * dt * dt * h3(a * dt); }
double int_b_exp(double a, double dt) { return dt * dt * h4(a * dt); }
double int_exp2(double a, double dt) { return dt * h1(2.0 * a * dt); }

}  // namespace sdice::hw
