#include "sdice/adam.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace sdice;

namespace {

// Concave quadratic with known maximizer; gradient filled analytically.
ObjectiveFn quadratic(std::vector<double> peak, std::vector<double> curvature) {
    return [peak, curvature](const std::vector<double>& x, std::vector<double>& grad) {
        double f = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - peak[j];
            f -= curvature[j] * d * d;
            grad[j] = -2.0 * curvature[j] * d;
        }
        return f;
    };
}

}  // namespace

TEST_CASE("adam climbs a 1-d quadratic to its peak") {
    AdamConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.max_iterations = 5000;
    AdamResult res = adam_maximize(quadratic({2.0}, {1.0}), {0.0}, cfg);
    CHECK(res.converged);
    CHECK(res.params[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(res.objective == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    CHECK(res.trace.size() == res.iterations);
    // The reported objective is the best of the trace.
    double best = res.trace.front().objective;
    for (const AdamTracePoint& p : res.trace) best = std::max(best, p.objective);
    CHECK(res.objective == best);
}

TEST_CASE("step scales equalize badly conditioned directions") {
    // Curvatures differ by 1e4; per-parameter scales restore progress.
    AdamConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.max_iterations = 8000;
    cfg.step_scale = {1.0, 0.01};
    AdamResult res = adam_maximize(quadratic({3.0, 0.5}, {1.0, 1e4}), {0.0, 0.0}, cfg);
    CHECK(res.params[0] == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(res.params[1] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("projection pins iterates to the box") {
    AdamConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.max_iterations = 400;
    cfg.lower = {0.0};
    cfg.upper = {2.0};
    AdamResult res = adam_maximize(quadratic({5.0}, {1.0}), {1.0}, cfg);
    // The peak lies outside; the best feasible point is the upper bound.
    CHECK(res.params[0] == 2.0);
    CHECK(res.objective == doctest::Approx(-9.0).epsilon(1e-12));
    for (const AdamTracePoint& p : res.trace) {
        CHECK(p.params[0] >= 0.0);
        CHECK(p.params[0] <= 2.0);
    }
    // Gradient never vanishes at an active bound, so no convergence claim.
    CHECK(!res.converged);

    // An infeasible start is projected before the first evaluation.
    AdamResult res2 = adam_maximize(quadratic({5.0}, {1.0}), {9.0}, cfg);
    CHECK(res2.trace.front().params[0] == 2.0);
}

TEST_CASE("zero initial gradient converges immediately") {
    AdamConfig cfg;
    AdamResult res = adam_maximize(quadratic({1.0}, {1.0}), {1.0}, cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.params[0] == 1.0);
}

TEST_CASE("config validation rejects malformed settings") {
    AdamConfig cfg;
    cfg.beta1 = 1.0;
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg = {};
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg = {};
    cfg.lower = {1.0};
    cfg.upper = {0.0};
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg = {};
    cfg.step_scale = {1.0, 1.0};  // wrong arity
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg = {};
    CHECK_THROWS_AS(adam_maximize(quadratic({0.0}, {1.0}), {}, cfg), std::invalid_argument);
}

TEST_CASE("noisy plateau returns best-seen iterate instead of the last") {
    // Objective with a deterministic dimple: the best point is visited midway.
    std::size_t calls = 0;
    ObjectiveFn f = [&calls](const std::vector<double>& x, std::vector<double>& grad) {
        ++calls;
        grad[0] = -2.0 * x[0];
        const double base = -x[0] * x[0];
        return calls == 7 ? base + 100.0 : base;  // spurious spike on call 7
    };
    AdamConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.max_iterations = 50;
    cfg.grad_tolerance = 0.0;  // force the full budget
    AdamResult res = adam_maximize(f, {1.0}, cfg);
    CHECK(res.objective == doctest::Approx(100.0 - res.params[0] * res.params[0]).epsilon(1e-12));
    CHECK(res.trace.size() == 50);
}
