#pragma once

// Projected ADAM ascent on a smooth (almost everywhere) objective.
//
// The objective callback fills the gradient and returns the value; ADAM takes
// bias-corrected moment steps scaled per coordinate (year-valued parameters
// need much larger steps than fractions) and projects onto box bounds after
// every update. Maximization convention throughout: the step moves *up* the
// gradient; callers with a loss negate it.
//
// Convergence is declared when the gradient norm falls below grad_tolerance
// times the initial gradient norm. Hitting max_iterations instead returns the
// best-objective iterate seen with converged = false -- never an error, so a
// run that stalls still yields its best parameters plus the full trace.

#include <cstddef>
#include <functional>
#include <vector>

namespace sdice {

struct AdamConfig {
    double learning_rate = 0.01;  // multiplied by each parameter's step scale
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::size_t max_iterations = 2000;
    double grad_tolerance = 1e-6;  // relative to the initial gradient norm

    // Per-parameter boxes and step scales; empty means unbounded / unit scale.
    std::vector<double> lower, upper, step_scale;

    void validate(std::size_t n_params) const;
};

// value = f(x, grad); grad is resized by the caller and must be filled.
using ObjectiveFn = std::function<double(const std::vector<double>&, std::vector<double>&)>;

struct AdamTracePoint {
    std::size_t iteration;  // 0-based evaluation index
    std::vector<double> params;
    double objective;
    double grad_norm;
};

struct AdamResult {
    std::vector<double> params;  // best-objective iterate
    double objective = 0.0;
    double grad_norm = 0.0;  // at the best iterate
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<AdamTracePoint> trace;
};

AdamResult adam_maximize(const ObjectiveFn& f, std::vector<double> x0, const AdamConfig& cfg);

}  // namespace sdice
