#include "sdice/sensitivity.hpp"

#include <stdexcept>
#include <utility>

namespace sdice {

WelfareObjective::WelfareObjective(const DiceModel& model, const RateSystem& rates, Policy& policy)
    : model_(&model), rates_(&rates), policy_(&policy) {}

Trajectory WelfareObjective::simulate(const std::vector<double>& x, Tape* tape,
                                      ShiftLeaves* shifts) const {
    policy_->bind(tape, x);
    ModelConfig cfg;
    cfg.rates = rates_;
    cfg.policy = policy_;
    cfg.funding = funding_;
    cfg.compensator = compensator_;
    cfg.shifts = shifts;
    cfg.savings.reserve(savings_.size());
    for (double s : savings_) cfg.savings.emplace_back(s);
    return model_->simulate(cfg);
}

double WelfareObjective::value(const std::vector<double>& x) const {
    return pv_mean(simulate(x, nullptr).welfare.val);
}

double WelfareObjective::value_and_gradient(const std::vector<double>& x,
                                            std::vector<double>& grad) const {
    Tape tape;
    Trajectory traj = simulate(x, &tape);
    const BackwardResult res = tape.backward(traj.welfare);
    const auto leaves = policy_->param_leaves();
    grad.resize(leaves.size());
    for (std::size_t j = 0; j < leaves.size(); ++j) grad[j] = res.gradient(*leaves[j]);
    return pv_mean(traj.welfare.val);
}

ObjectiveFn WelfareObjective::fn() const {
    return [this](const std::vector<double>& x, std::vector<double>& grad) {
        return value_and_gradient(x, grad);
    };
}

AdamConfig make_adam_config(const std::vector<ParamSpec>& specs) {
    AdamConfig cfg;
    cfg.lower.reserve(specs.size());
    cfg.upper.reserve(specs.size());
    cfg.step_scale.reserve(specs.size());
    for (const ParamSpec& s : specs) {
        cfg.lower.push_back(s.lo);
        cfg.upper.push_back(s.hi);
        cfg.step_scale.push_back(s.step_scale);
    }
    return cfg;
}

std::vector<double> initial_params(const std::vector<ParamSpec>& specs) {
    std::vector<double> x;
    x.reserve(specs.size());
    for (const ParamSpec& s : specs) x.push_back(s.init);
    return x;
}

AdjointProbes welfare_shift_adjoints(const WelfareObjective& objective,
                                     const std::vector<double>& x) {
    const std::size_t n = objective.model().grid().steps();
    Tape tape;
    ShiftLeaves shifts = ShiftLeaves::make(tape, n);
    Trajectory traj = objective.simulate(x, &tape, &shifts);
    const BackwardResult res = tape.backward(traj.welfare);
    AdjointProbes probes;
    probes.consumption.resize(n);
    probes.emission.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        probes.consumption[i] = res.gradient(shifts.consumption[i]);
        probes.emission[i] = res.gradient(shifts.emission[i]);
    }
    return probes;
}

namespace {

// Derivatives of expect(cost[t]) with respect to every policy leaf, one
// backward call per production node. An unrecorded cost (no leaf upstream,
// e.g. node 0 of a pinned piecewise policy) yields a zero row.
std::vector<std::vector<double>> cost_rows(const Tape& tape, const std::vector<Value>& roots,
                                           const std::vector<const Value*>& leaves) {
    std::vector<std::vector<double>> rows(roots.size());
    for (std::size_t t = 0; t < roots.size(); ++t) {
        rows[t].assign(leaves.size(), 0.0);
        if (!roots[t].recorded()) continue;
        const BackwardResult res = tape.backward(roots[t]);
        for (std::size_t j = 0; j < leaves.size(); ++j) rows[t][j] = res.gradient(*leaves[j]);
    }
    return rows;
}

}  // namespace

CostSensitivities nodewise_cost_sensitivities(const DiceModel& model, const RateSystem& rates,
                                              double mu_initial,
                                              const std::vector<double>& mu_free) {
    const std::size_t n = model.grid().steps();
    if (mu_free.size() != n - 1)
        throw std::invalid_argument("nodewise sensitivities: need one mu per free step");

    PiecewisePolicy policy(n, mu_initial, mu_free);
    WelfareObjective objective(model, rates, policy);

    Tape tape;
    ShiftLeaves shifts = ShiftLeaves::make(tape, n);
    Trajectory traj = objective.simulate(mu_free, &tape, &shifts);

    CostSensitivities out;
    out.welfare_weight.resize(n);
    {
        const BackwardResult res = tape.backward(traj.welfare);
        for (std::size_t i = 0; i < n; ++i)
            out.welfare_weight[i] = res.gradient(shifts.consumption[i]);
    }

    // Scalar roots per node; free-leaf gradients fill columns s >= 1.
    std::vector<Value> ca_roots, cd_roots;
    ca_roots.reserve(n);
    cd_roots.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        ca_roots.push_back(expect(traj.econ[t].ca));
        cd_roots.push_back(expect(traj.econ[t].cd));
    }
    const auto leaves = policy.param_leaves();
    const auto dca_free = cost_rows(tape, ca_roots, leaves);
    const auto dcd_free = cost_rows(tape, cd_roots, leaves);

    out.dca.assign(n, std::vector<double>(n, 0.0));
    out.dcd.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 1; s < n; ++s) {
            out.dca[t][s] = dca_free[t][s - 1];
            out.dcd[t][s] = dcd_free[t][s - 1];
        }
    return out;
}

ReducedSensitivities reduced_model_sensitivities(const DiceModel& model, const RateSystem& rates,
                                                 double mu_initial, double t_full) {
    const std::size_t n = model.grid().steps();
    OneParamPolicy policy(mu_initial, t_full);
    WelfareObjective objective(model, rates, policy);

    Tape tape;
    ShiftLeaves shifts = ShiftLeaves::make(tape, n);
    Trajectory traj = objective.simulate({t_full}, &tape, &shifts);
    const Value& leaf = *policy.param_leaves()[0];

    ReducedSensitivities out;
    out.dca_dT.resize(n);
    out.dcd_dT.resize(n);
    out.welfare_weight.resize(n);
    {
        const BackwardResult res = tape.backward(traj.welfare);
        for (std::size_t i = 0; i < n; ++i)
            out.welfare_weight[i] = res.gradient(shifts.consumption[i]);
    }
    for (std::size_t t = 0; t < n; ++t) {
        const Value ca_root = expect(traj.econ[t].ca);
        const Value cd_root = expect(traj.econ[t].cd);
        out.dca_dT[t] = ca_root.recorded() ? tape.backward(ca_root).gradient(leaf) : 0.0;
        out.dcd_dT[t] = cd_root.recorded() ? tape.backward(cd_root).gradient(leaf) : 0.0;
    }
    return out;
}

}  // namespace sdice
