#include "sdice/adam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdice {

void AdamConfig::validate(std::size_t n_params) const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("adam: learning_rate must be > 0");
    if (!(beta1 > 0.0 && beta1 < 1.0)) throw std::invalid_argument("adam: beta1 must lie in (0,1)");
    if (!(beta2 > 0.0 && beta2 < 1.0)) throw std::invalid_argument("adam: beta2 must lie in (0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("adam: epsilon must be > 0");
    if (max_iterations == 0) throw std::invalid_argument("adam: max_iterations must be >= 1");
    if (!(grad_tolerance >= 0.0)) throw std::invalid_argument("adam: grad_tolerance must be >= 0");
    const auto check_len = [n_params](const std::vector<double>& v, const char* what) {
        if (!v.empty() && v.size() != n_params)
            throw std::invalid_argument(std::string("adam: ") + what +
                                        " must be empty or one entry per parameter");
    };
    check_len(lower, "lower bounds");
    check_len(upper, "upper bounds");
    check_len(step_scale, "step scales");
    for (std::size_t j = 0; j < lower.size() && j < upper.size(); ++j)
        if (lower[j] > upper[j]) throw std::invalid_argument("adam: lower bound above upper bound");
    for (double s : step_scale)
        if (!(s > 0.0)) throw std::invalid_argument("adam: step scales must be > 0");
}

AdamResult adam_maximize(const ObjectiveFn& f, std::vector<double> x0, const AdamConfig& cfg) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("adam: empty parameter vector");
    cfg.validate(n);

    const auto project = [&cfg, n](std::vector<double>& x) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!cfg.lower.empty()) x[j] = std::max(x[j], cfg.lower[j]);
            if (!cfg.upper.empty()) x[j] = std::min(x[j], cfg.upper[j]);
        }
    };
    project(x0);

    AdamResult res;
    std::vector<double> x = std::move(x0);
    std::vector<double> g(n), m(n, 0.0), v(n, 0.0);
    double g0_norm = 0.0;
    bool have_best = false;

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        const double fx = f(x, g);
        double norm_sq = 0.0;
        for (double gj : g) norm_sq += gj * gj;
        const double gnorm = std::sqrt(norm_sq);

        res.trace.push_back({it, x, fx, gnorm});
        res.iterations = it + 1;
        if (!have_best || fx > res.objective) {
            res.params = x;
            res.objective = fx;
            res.grad_norm = gnorm;
            have_best = true;
        }

        if (it == 0) g0_norm = gnorm;
        if (gnorm <= cfg.grad_tolerance * g0_norm) {
            res.converged = true;
            break;
        }

        const double bc1 = 1.0 - std::pow(cfg.beta1, double(it + 1));
        const double bc2 = 1.0 - std::pow(cfg.beta2, double(it + 1));
        for (std::size_t j = 0; j < n; ++j) {
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g[j];
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g[j] * g[j];
            const double step = cfg.learning_rate * (cfg.step_scale.empty() ? 1.0 : cfg.step_scale[j]);
            x[j] += step * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + cfg.epsilon);
        }
        project(x);
    }
    return res;
}

}  // namespace sdice
