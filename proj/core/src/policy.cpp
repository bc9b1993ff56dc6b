#include "sdice/policy.hpp"

#include <stdexcept>

namespace sdice {

namespace {

void check_dim(std::size_t got, std::size_t want, const char* kind) {
    if (got != want)
        throw std::invalid_argument(std::string(kind) + ": wrong parameter vector length");
}

}  // namespace

// --- one_param ---

OneParamPolicy::OneParamPolicy(double mu_initial, double t_full_init)
    : mu_initial_(mu_initial), t_full_init_(t_full_init) {
    if (mu_initial < 0.0 || mu_initial >= 1.0)
        throw std::invalid_argument("one_param: mu_initial must lie in [0,1)");
    if (t_full_init <= 0.0) throw std::invalid_argument("one_param: T must be positive");
}

std::vector<ParamSpec> OneParamPolicy::param_specs() const {
    return {{"T_full", t_full_init_, 1.0, 500.0, 100.0}};
}

void OneParamPolicy::bind(Tape* tape, const std::vector<double>& x) {
    check_dim(x.size(), 1, "one_param");
    if (x[0] <= 0.0) throw std::invalid_argument("one_param: T must be positive");
    t_full_ = tape ? tape->leaf(x[0]) : Value(x[0]);
    // Ramp speed (1-mu_initial)/T, built once; mu() then evaluates the exact
    // op sequence of the rate-responsive policy with a zero slope, so the two
    // families agree bitwise where they coincide.
    speed_ = affine(1.0 / t_full_, 1.0 - mu_initial_, 0.0);
    bound_ = true;
}

std::vector<const Value*> OneParamPolicy::param_leaves() const {
    if (!bound_) throw std::logic_error("one_param: bind() before param_leaves()");
    return {&t_full_};
}

Value OneParamPolicy::mu(std::size_t, double t, const Value&) const {
    if (!bound_) throw std::logic_error("one_param: bind() before mu()");
    Value raw = fma_v(Value(mu_initial_), speed_, Value(t));
    return min_c(max_c(raw, 0.0), 1.0);
}

// --- linear_stochastic ---

LinearStochasticPolicy::LinearStochasticPolicy(double mu_initial, double a0_init, double a1_init)
    : mu_initial_(mu_initial), a0_init_(a0_init), a1_init_(a1_init) {
    if (mu_initial < 0.0 || mu_initial >= 1.0)
        throw std::invalid_argument("linear_stochastic: mu_initial must lie in [0,1)");
}

std::vector<ParamSpec> LinearStochasticPolicy::param_specs() const {
    return {{"speed_const", a0_init_, 0.0, 1.0, 0.01},
            {"speed_rate_slope", a1_init_, -100.0, 100.0, 1.0}};
}

void LinearStochasticPolicy::bind(Tape* tape, const std::vector<double>& x) {
    check_dim(x.size(), 2, "linear_stochastic");
    a0_ = tape ? tape->leaf(x[0]) : Value(x[0]);
    a1_ = tape ? tape->leaf(x[1]) : Value(x[1]);
    bound_ = true;
}

std::vector<const Value*> LinearStochasticPolicy::param_leaves() const {
    if (!bound_) throw std::logic_error("linear_stochastic: bind() before param_leaves()");
    return {&a0_, &a1_};
}

Value LinearStochasticPolicy::mu(std::size_t, double t, const Value& rho) const {
    if (!bound_) throw std::logic_error("linear_stochastic: bind() before mu()");
    // Ramp speed responds to the current time-preference rate.
    Value speed = fma_v(a0_, a1_, rho);
    Value raw = fma_v(Value(mu_initial_), speed, Value(t));
    return min_c(max_c(raw, 0.0), 1.0);
}

// --- piecewise ---

PiecewisePolicy::PiecewisePolicy(std::size_t n_steps, double mu_initial, std::vector<double> init)
    : n_steps_(n_steps), mu_initial_(mu_initial), init_(std::move(init)) {
    if (n_steps_ < 1) throw std::invalid_argument("piecewise: need at least one step");
    if (init_.size() != n_steps_ - 1)
        throw std::invalid_argument("piecewise: need one initial value per free step");
    for (double v : init_)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("piecewise: initial values must lie in [0,1]");
}

std::vector<ParamSpec> PiecewisePolicy::param_specs() const {
    std::vector<ParamSpec> specs;
    specs.reserve(n_steps_ - 1);
    for (std::size_t i = 1; i < n_steps_; ++i)
        specs.push_back({"mu_" + std::to_string(i), init_[i - 1], 0.0, 1.0, 1.0});
    return specs;
}

void PiecewisePolicy::bind(Tape* tape, const std::vector<double>& x) {
    check_dim(x.size(), n_steps_ - 1, "piecewise");
    values_.clear();
    values_.reserve(n_steps_);
    values_.emplace_back(mu_initial_);  // pinned start, not a parameter
    for (double v : x) values_.push_back(tape ? tape->leaf(v) : Value(v));
    bound_ = true;
}

Value PiecewisePolicy::mu(std::size_t i, double, const Value&) const {
    if (!bound_) throw std::logic_error("piecewise: bind() before mu()");
    if (i >= n_steps_) throw std::out_of_range("piecewise: node outside grid");
    return values_[i];
}

std::vector<const Value*> PiecewisePolicy::param_leaves() const {
    if (!bound_) throw std::logic_error("piecewise: bind() before param_leaves()");
    std::vector<const Value*> out;
    out.reserve(n_steps_ - 1);
    for (std::size_t i = 1; i < n_steps_; ++i) out.push_back(&values_[i]);
    return out;
}

const Value& PiecewisePolicy::leaf(std::size_t i) const {
    if (!bound_) throw std::logic_error("piecewise: bind() before leaf()");
    if (i == 0 || i >= n_steps_)
        throw std::out_of_range("piecewise: no free parameter at this step");
    return values_[i];
}

}  // namespace sdice
