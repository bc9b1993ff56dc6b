#include "sdice/dice_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <utility>

namespace sdice {

ShiftLeaves ShiftLeaves::make(Tape& tape, std::size_t n_steps) {
    ShiftLeaves s;
    s.emission.reserve(n_steps);
    s.consumption.reserve(n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) {
        s.emission.push_back(tape.leaf(0.0));
        s.consumption.push_back(tape.leaf(0.0));
    }
    return s;
}

namespace {

template <std::size_t N>
using Mat = std::array<std::array<double, N>, N>;

// (lambda^alpha - 1) / (lambda - 1) for lambda > 0, stable through lambda = 1
// (the carbon matrix conserves mass, so 1 is in its spectrum).
double power_ratio(double lam, double alpha) {
    const double l = std::log(lam);
    if (std::abs(l) < 1e-6) return alpha * (1.0 + 0.5 * (alpha - 1.0) * l);
    return std::expm1(alpha * l) / std::expm1(l);
}

template <std::size_t N>
struct SpectralStep {
    Mat<N> prop;                 // M^alpha
    std::array<double, N> load;  // first column of 5 Phi(dt) Phi(5)^{-1}
};

// Fractional power M^alpha of a transition matrix whose off-diagonal band has
// positive products (true of the DICE carbon and temperature exchanges),
// together with the zero-order-hold loading column: sources that the
// five-year map injects as 5*u into the first component enter a dt-step as
// load*u with load = 5 Phi(dt) Phi(5)^{-1} e1, Phi(dt) = int_0^dt e^{As} ds,
// M = e^{5A}. This makes sub-steps with frozen sources compose exactly back
// to the five-year map. A diagonal similarity makes M symmetric, a cyclic
// Jacobi sweep diagonalizes it, and both the power and the loading act on the
// (necessarily positive) spectrum. alpha == 1 returns the matrix and loading
// verbatim so a five-year step keeps its literal GAMS coefficients.
template <std::size_t N>
SpectralStep<N> spectral_step(const Mat<N>& m, double alpha) {
    if (alpha == 1.0) {
        SpectralStep<N> step{m, {}};
        step.load[0] = 5.0;
        return step;
    }

    std::array<double, N> s{};
    s[0] = 1.0;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (!(m[k + 1][k] > 0.0) || !(m[k][k + 1] > 0.0))
            throw std::logic_error("climate transition: exchange band must be positive");
        s[k + 1] = s[k] * std::sqrt(m[k][k + 1] / m[k + 1][k]);
    }
    Mat<N> a{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a[i][j] = s[i] * m[i][j] / s[j];

    Mat<N> q{};
    for (std::size_t i = 0; i < N; ++i) q[i][i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off = std::max(off, std::abs(a[i][j]));
        if (off < 1e-15) break;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t r = p + 1; r < N; ++r) {
                if (a[p][r] == 0.0) continue;
                const double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < N; ++k) {  // A <- A J
                    const double akp = a[k][p], akr = a[k][r];
                    a[k][p] = c * akp - sn * akr;
                    a[k][r] = sn * akp + c * akr;
                }
                for (std::size_t k = 0; k < N; ++k) {  // A <- J^T A
                    const double apk = a[p][k], ark = a[r][k];
                    a[p][k] = c * apk - sn * ark;
                    a[r][k] = sn * apk + c * ark;
                }
                for (std::size_t k = 0; k < N; ++k) {  // Q <- Q J
                    const double qkp = q[k][p], qkr = q[k][r];
                    q[k][p] = c * qkp - sn * qkr;
                    q[k][r] = sn * qkp + c * qkr;
                }
            }
    }

    SpectralStep<N> step{};
    std::array<double, N> lam{}, ratio{};
    for (std::size_t k = 0; k < N; ++k) {
        if (!(a[k][k] > 0.0))
            throw std::logic_error("climate transition: spectrum must be positive");
        lam[k] = std::pow(a[k][k], alpha);
        ratio[k] = 5.0 * power_ratio(a[k][k], alpha);
    }
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < N; ++k) acc += q[i][k] * lam[k] * q[j][k];
            step.prop[i][j] = acc * s[j] / s[i];
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) acc += q[i][k] * ratio[k] * q[0][k];
        step.load[i] = acc / s[i];  // s[0] == 1
    }
    return step;
}

}  // namespace

DiceModel::DiceModel(TimeGrid grid, DiceParams params)
    : grid_(std::move(grid)), params_(params), exo_(ExogenousPaths::build(grid_, params_)) {
    params_.validate();

    const DiceParams& p = params_;
    const double b21 = p.b12 * p.mateq / p.mueq;
    const double b32 = p.b23 * p.mueq / p.mleq;
    const Mat<3> c5 = {{{1.0 - p.b12, b21, 0.0},
                        {p.b12, 1.0 - b21 - p.b23, b32},
                        {0.0, p.b23, 1.0 - b32}}};
    const double lam = p.lambda_forcing();
    const Mat<2> t5 = {{{1.0 - p.c1 * (lam + p.c3), p.c1 * p.c3},
                        {p.c4, 1.0 - p.c4}}};

    const double k5 = std::pow(1.0 - p.dk, 5.0);

    prop_.reserve(grid_.steps());
    std::vector<std::pair<double, StepPropagators>> cache;
    for (std::size_t i = 0; i < grid_.steps(); ++i) {
        const double dt = grid_.dt(i);
        auto it = std::find_if(cache.begin(), cache.end(),
                               [&](const auto& e) { return e.first == dt; });
        if (it == cache.end()) {
            const double alpha = dt / 5.0;
            const SpectralStep<3> sc = spectral_step(c5, alpha);
            const SpectralStep<2> st = spectral_step(t5, alpha);
            StepPropagators sp;
            sp.carbon = sc.prop;
            sp.temp = st.prop;
            // Normalize the loading columns to the literal GAMS units: the
            // five-year map adds E*5/co2_per_c GtC and c1*F degrees.
            for (std::size_t k = 0; k < 3; ++k)
                sp.carbon_load[k] = sc.load[k] / p.co2_per_c;
            for (std::size_t k = 0; k < 2; ++k)
                sp.temp_load[k] = p.c1 * (st.load[k] / 5.0);
            sp.k_load = alpha == 1.0 ? dt : 5.0 * power_ratio(k5, alpha);
            cache.push_back({dt, sp});
            it = std::prev(cache.end());
        }
        prop_.push_back(it->second);
    }
}

namespace {

Value savings_at(const ModelConfig& cfg, const DiceParams& p, std::size_t i) {
    if (cfg.savings.empty()) return Value(p.optlrsav());
    return cfg.savings.size() == 1 ? cfg.savings[0] : cfg.savings[i];
}

}  // namespace

Trajectory DiceModel::simulate(const ModelConfig& cfg) const {
    if (!cfg.rates) throw std::invalid_argument("model: rate system required");
    if (!cfg.policy) throw std::invalid_argument("model: policy required");
    const RateSystem& rs = *cfg.rates;
    const std::size_t steps = grid_.steps();
    if (rs.rho.size() != grid_.nodes() || rs.discount.size() != grid_.nodes())
        throw std::invalid_argument("model: rate system does not match the grid");
    if (!cfg.savings.empty() && cfg.savings.size() != 1 && cfg.savings.size() != steps)
        throw std::invalid_argument("model: savings needs 1 or steps() entries");
    if (cfg.shifts &&
        (cfg.shifts->emission.size() != steps || cfg.shifts->consumption.size() != steps))
        throw std::invalid_argument("model: shift leaves must cover every step");
    if (cfg.compensator) cfg.compensator->validate();

    const DiceParams& p = params_;
    const std::size_t n = rs.n_paths;
    const bool compensate = cfg.compensator && cfg.compensator->enabled;

    std::unique_ptr<FundingEngine> funding;
    if (cfg.funding && cfg.funding->mode != FundingMode::none)
        funding = std::make_unique<FundingEngine>(grid_, rs, *cfg.funding);

    Trajectory tr;
    tr.econ.reserve(steps);
    for (auto* v : {&tr.k, &tr.mat, &tr.mup, &tr.mlo, &tr.tatm, &tr.tocean})
        v->reserve(steps + 1);
    tr.k.push_back(Value(p.k0));
    tr.mat.push_back(Value(p.mat0));
    tr.mup.push_back(Value(p.mu0_carbon));
    tr.mlo.push_back(Value(p.ml0));
    tr.tatm.push_back(Value(p.tatm0));
    tr.tocean.push_back(Value(p.tocean0));

    Value acc(0.0);  // running sum_i V(t_i) * DF_i * dt_i
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = grid_.t(i);
        const double dt = grid_.dt(i);
        NodeEcon e;

        e.mu = cfg.policy->mu(i, t, make_const(rs.rho[i]));
        e.ygross = affine(pow_c(tr.k[i], p.gama),
                          exo_.tfp[i] * std::pow(exo_.pop[i] / 1000.0, 1.0 - p.gama), 0.0);

        Value dam_raw = affine(pow_c(tr.tatm[i], p.a3), p.a2, 0.0);
        tr.diag.damfrac_clamp_hits += n - pv_count_lt(dam_raw.val, 1.0, n);
        e.damfrac = min_c(dam_raw, 1.0);

        e.cmu = affine(pow_c(e.mu, p.expcost2), exo_.theta1[i], 0.0) * e.ygross;
        e.eind = affine(e.mu, -exo_.sigma[i], exo_.sigma[i]) * e.ygross;
        if (cfg.shifts) e.eind = e.eind + cfg.shifts->emission[i];
        e.etot = e.eind + exo_.eland[i];
        e.cd0 = e.damfrac * e.ygross;

        if (compensate) {
            Value x = cfg.compensator->normalizer == CompensatorConfig::Normalizer::gross_output
                          ? e.damfrac
                          : e.cd0 * make_const(rs.discount[i]);
            e.cd = e.cd0 * compensator_multiplier(*cfg.compensator, x);
        } else {
            e.cd = e.cd0;
        }

        if (funding) {
            funding->originate(i, e.cmu);
            e.ca = funding->arrivals(i);
        } else {
            e.ca = e.cmu;
        }

        const Value& cd_budget = (compensate && !cfg.compensator->affects_output) ? e.cd0 : e.cd;
        e.y = e.ygross - cd_budget - e.ca;
        Value inv = e.y * savings_at(cfg, p, i);
        e.cons = e.y - inv;
        if (cfg.shifts) e.cons = e.cons + cfg.shifts->consumption[i];

        Value cpc_raw = affine(e.cons, 1000.0 / exo_.pop[i], 0.0);
        tr.diag.cpc_floor_hits += pv_count_lt(cpc_raw.val, p.cons_floor, n);
        e.cpc = max_c(cpc_raw, p.cons_floor);

        if (p.elasmu == 1.0) {
            e.util = affine(log_v(e.cpc), exo_.pop[i], 0.0);
        } else {
            const double w = exo_.pop[i] / (1.0 - p.elasmu);
            e.util = affine(pow_c(e.cpc, 1.0 - p.elasmu), w, -w);
        }
        acc = fma_v(acc, e.util * make_const(rs.discount[i]), Value(dt));

        // State advance i -> i+1: exact propagation of the linear blocks plus
        // their zero-order-hold source loadings. Forcing is evaluated at the
        // arrival node from the already-updated atmospheric stock (the GAMS
        // ordering).
        const StepPropagators& prop = prop_[i];
        const auto combine = [](std::initializer_list<std::pair<const Value*, double>> terms) {
            Value acc(0.0);
            bool first = true;
            for (const auto& [x, w] : terms) {
                if (w == 0.0) continue;
                if (first) {
                    acc = affine(*x, w, 0.0);
                    first = false;
                } else {
                    acc = fma_v(acc, *x, Value(w));
                }
            }
            return acc;
        };
        const auto with_src = [](Value base, const Value& src, double w) {
            return w == 0.0 ? base : fma_v(std::move(base), src, Value(w));
        };

        Value kn = fma_v(affine(tr.k[i], std::pow(1.0 - p.dk, dt), 0.0), inv,
                         Value(prop.k_load));
        Value matn = with_src(combine({{&tr.mat[i], prop.carbon[0][0]},
                                       {&tr.mup[i], prop.carbon[0][1]},
                                       {&tr.mlo[i], prop.carbon[0][2]}}),
                              e.etot, prop.carbon_load[0]);
        Value mupn = with_src(combine({{&tr.mat[i], prop.carbon[1][0]},
                                       {&tr.mup[i], prop.carbon[1][1]},
                                       {&tr.mlo[i], prop.carbon[1][2]}}),
                              e.etot, prop.carbon_load[1]);
        Value mlon = with_src(combine({{&tr.mat[i], prop.carbon[2][0]},
                                       {&tr.mup[i], prop.carbon[2][1]},
                                       {&tr.mlo[i], prop.carbon[2][2]}}),
                              e.etot, prop.carbon_load[2]);
        Value forc = affine(log_v(affine(matn, 1.0 / p.mateq, 0.0)), p.fco22x / std::log(2.0),
                            exo_.forc_ex[i + 1]);
        Value tatn = with_src(combine({{&tr.tatm[i], prop.temp[0][0]},
                                       {&tr.tocean[i], prop.temp[0][1]}}),
                              forc, prop.temp_load[0]);
        Value tlon = with_src(combine({{&tr.tatm[i], prop.temp[1][0]},
                                       {&tr.tocean[i], prop.temp[1][1]}}),
                              forc, prop.temp_load[1]);

        tr.k.push_back(std::move(kn));
        tr.mat.push_back(std::move(matn));
        tr.mup.push_back(std::move(mupn));
        tr.mlo.push_back(std::move(mlon));
        tr.tatm.push_back(std::move(tatn));
        tr.tocean.push_back(std::move(tlon));
        tr.econ.push_back(std::move(e));
    }

    if (funding) tr.diag.truncated_tranches = funding->truncated_tranches();
    tr.welfare = affine(expect(acc), p.utility_scale, 0.0);
    return tr;
}

}  // namespace sdice
