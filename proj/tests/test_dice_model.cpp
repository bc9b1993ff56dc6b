#include "sdice/dice_model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sdice/brownian.hpp"
#include "sdice/hull_white.hpp"
#include "sdice/policy.hpp"

using namespace sdice;

namespace {

// Independent period-indexed reimplementation of the published DICE-2016R
// five-year recursion (GAMS source DICE2016R-091916ap.gms), all coefficients
// literal. On a five-year grid the continuous-time engine must reproduce it
// to round-off.
struct Gams2016 {
    std::vector<double> l, al, sigma, etree, forcoth, cost1;
    std::vector<double> k, mat, mu_ocean, ml, tatm, tocean;
    std::vector<double> ygross, damfrac, eind, e, abatecost, damages, y, c, cpc, inv;

    Gams2016(int nper, const std::vector<double>& miu, double s) {
        const double tstep = 5.0;
        l.resize(nper + 1);
        al.resize(nper + 1);
        sigma.resize(nper + 1);
        etree.resize(nper + 1);
        forcoth.resize(nper + 1);
        cost1.resize(nper + 1);
        l[0] = 7403.0;
        al[0] = 5.115;
        sigma[0] = 35.85 / (105.5 * (1.0 - 0.03));
        double gsig = -0.0152;
        for (int t = 0; t < nper; ++t) {
            l[t + 1] = l[t] * std::pow(11500.0 / l[t], 0.134);
            const double ga = 0.076 * std::exp(-0.005 * tstep * t);
            al[t + 1] = al[t] / (1.0 - ga);
            sigma[t + 1] = sigma[t] * std::exp(gsig * tstep);
            gsig = gsig * std::pow(1.0 - 0.001, tstep);
        }
        for (int t = 0; t <= nper; ++t) {
            etree[t] = 2.6 * std::pow(1.0 - 0.115, t);
            forcoth[t] = t < 17 ? 0.5 + (1.0 / 17.0) * (1.0 - 0.5) * t : 1.0;
            cost1[t] = 550.0 * std::pow(1.0 - 0.025, t) * sigma[t] / 2.6 / 1000.0;
        }

        const double b12 = 0.12, b23 = 0.007;
        const double b11 = 1.0 - b12;
        const double b21 = b12 * 588.0 / 360.0;
        const double b22 = 1.0 - b21 - b23;
        const double b32 = b23 * 360.0 / 1720.0;
        const double b33 = 1.0 - b32;
        const double c1 = 0.1005, c3 = 0.088, c4 = 0.025;
        const double lam = 3.6813 / 3.1;

        auto grow = [&](std::vector<double>& v, double v0) {
            v.assign(nper + 1, 0.0);
            v[0] = v0;
        };
        grow(k, 223.0);
        grow(mat, 851.0);
        grow(mu_ocean, 460.0);
        grow(ml, 1740.0);
        grow(tatm, 0.85);
        grow(tocean, 0.0068);
        const int nflow = nper;
        for (auto* v : {&ygross, &damfrac, &eind, &e, &abatecost, &damages, &y, &c, &cpc, &inv})
            v->assign(nflow, 0.0);

        for (int t = 0; t < nper; ++t) {
            ygross[t] = al[t] * std::pow(l[t] / 1000.0, 1.0 - 0.3) * std::pow(k[t], 0.3);
            damfrac[t] = 0.00236 * tatm[t] * tatm[t];
            damages[t] = ygross[t] * damfrac[t];
            abatecost[t] = ygross[t] * cost1[t] * std::pow(miu[t], 2.6);
            eind[t] = sigma[t] * ygross[t] * (1.0 - miu[t]);
            e[t] = eind[t] + etree[t];
            y[t] = ygross[t] * (1.0 - damfrac[t]) - abatecost[t];
            inv[t] = s * y[t];
            c[t] = y[t] - inv[t];
            cpc[t] = 1000.0 * c[t] / l[t];

            mat[t + 1] = mat[t] * b11 + mu_ocean[t] * b21 + e[t] * (tstep / 3.666);
            mu_ocean[t + 1] = mat[t] * b12 + mu_ocean[t] * b22 + ml[t] * b32;
            ml[t + 1] = ml[t] * b33 + mu_ocean[t] * b23;
            const double forc = 3.6813 * std::log2(mat[t + 1] / 588.0) + forcoth[t + 1];
            tatm[t + 1] =
                tatm[t] + c1 * (forc - lam * tatm[t] - c3 * (tatm[t] - tocean[t]));
            tocean[t + 1] = tocean[t] + c4 * (tatm[t] - tocean[t]);
            k[t + 1] = std::pow(1.0 - 0.1, tstep) * k[t] + tstep * inv[t];
        }
    }
};

RateSystem flat_deterministic(const TimeGrid& grid, double rate) {
    HullWhiteModel hw(grid, HullWhiteModel::calibrate_flat(grid, 0.0, 0.0, rate));
    return hw.simulate();
}

double scalar(const Value& v) { return v.val.scalar(); }

}  // namespace

TEST_CASE("five-year grid reproduces the published DICE-2016 recursion") {
    const int nper = 6;
    std::vector<double> miu(nper);
    for (int t = 0; t < nper; ++t) miu[t] = std::min(0.03 + 0.05 * t, 1.0);
    const DiceParams params = DiceParams::dice2016();
    const double s = params.optlrsav();
    Gams2016 oracle(nper, miu, s);

    TimeGrid grid = TimeGrid::uniform(2015.0, 5.0 * nper, 5.0);
    RateSystem rs = flat_deterministic(grid, params.prstp);
    PiecewisePolicy pol(nper, miu[0], std::vector<double>(miu.begin() + 1, miu.end()));
    pol.bind(nullptr, std::vector<double>(miu.begin() + 1, miu.end()));

    DiceModel model(grid, params);
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    Trajectory tr = model.simulate(cfg);

    REQUIRE(tr.econ.size() == static_cast<std::size_t>(nper));
    REQUIRE(tr.k.size() == static_cast<std::size_t>(nper) + 1);

    for (int t = 0; t < nper; ++t) {
        INFO("period ", t);
        CHECK(scalar(tr.econ[t].ygross) == doctest::Approx(oracle.ygross[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].damfrac) == doctest::Approx(oracle.damfrac[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].eind) == doctest::Approx(oracle.eind[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].etot) == doctest::Approx(oracle.e[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].ca) == doctest::Approx(oracle.abatecost[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].cd) == doctest::Approx(oracle.damages[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].y) == doctest::Approx(oracle.y[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].cons) == doctest::Approx(oracle.c[t]).epsilon(1e-12));
        CHECK(scalar(tr.econ[t].cpc) == doctest::Approx(oracle.cpc[t]).epsilon(1e-12));
    }
    for (int t = 0; t <= nper; ++t) {
        INFO("node ", t);
        CHECK(scalar(tr.k[t]) == doctest::Approx(oracle.k[t]).epsilon(1e-12));
        CHECK(scalar(tr.mat[t]) == doctest::Approx(oracle.mat[t]).epsilon(1e-12));
        CHECK(scalar(tr.mup[t]) == doctest::Approx(oracle.mu_ocean[t]).epsilon(1e-12));
        CHECK(scalar(tr.mlo[t]) == doctest::Approx(oracle.ml[t]).epsilon(1e-12));
        CHECK(scalar(tr.tatm[t]) == doctest::Approx(oracle.tatm[t]).epsilon(1e-12));
        CHECK(scalar(tr.tocean[t]) == doctest::Approx(oracle.tocean[t]).epsilon(1e-12));
    }

    // Welfare against an independent accumulation with flat discounting.
    double w = 0.0;
    for (int t = 0; t < nper; ++t) {
        const double u =
            oracle.l[t] * (std::pow(oracle.cpc[t], 1.0 - 1.45) - 1.0) / (1.0 - 1.45);
        w += 5.0 * u * std::exp(-0.015 * 5.0 * t);
    }
    CHECK(scalar(tr.welfare) == doctest::Approx(w).epsilon(1e-10));
}

TEST_CASE("damage fraction book values surface at the first node") {
    // With T_AT(0) = 1 the first-node damage fraction is psi2 itself; with
    // T_AT(0) = 3 it is 9 * psi2.
    for (auto [t0, want] : {std::pair{1.0, 0.00236}, std::pair{3.0, 0.02124}}) {
        DiceParams p = DiceParams::dice2016();
        p.tatm0 = t0;
        TimeGrid grid = TimeGrid::uniform(2015.0, 10.0, 5.0);
        RateSystem rs = flat_deterministic(grid, p.prstp);
        OneParamPolicy pol(0.03, 100.0);
        pol.bind(nullptr, {100.0});
        ModelConfig cfg;
        cfg.rates = &rs;
        cfg.policy = &pol;
        Trajectory tr = DiceModel(grid, p).simulate(cfg);
        CHECK(scalar(tr.econ[0].damfrac) == doctest::Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("abatement cost fraction book values surface at the first node") {
    DiceParams p = DiceParams::dice2016();
    // Engineer theta1(2015) = 0.07 through the backstop price.
    p.pback = 0.07 * 1000.0 * p.expcost2 / p.sig0();
    TimeGrid grid = TimeGrid::uniform(2015.0, 10.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    DiceModel model(grid, p);
    CHECK(model.exogenous().theta1[0] == doctest::Approx(0.07).epsilon(1e-14));

    auto ratio_at_mu0 = [&](double mu0) {
        PiecewisePolicy pol(grid.steps(), mu0, {mu0});
        pol.bind(nullptr, {mu0});
        ModelConfig cfg;
        cfg.rates = &rs;
        cfg.policy = &pol;
        Trajectory tr = model.simulate(cfg);
        return scalar(tr.econ[0].cmu) / scalar(tr.econ[0].ygross);
    };
    CHECK(ratio_at_mu0(0.0) == 0.0);
    CHECK(ratio_at_mu0(0.99999999) == doctest::Approx(0.07).epsilon(1e-7));
    // 0.07 * 0.5^2.6 ~= 0.0115458.
    CHECK(ratio_at_mu0(0.5) == doctest::Approx(0.07 * std::pow(0.5, 2.6)).epsilon(1e-14));
    CHECK(ratio_at_mu0(0.5) == doctest::Approx(0.011547).epsilon(1e-4));
}

TEST_CASE("utility flow is CRRA with population weight") {
    auto crra = [](double c, double pop, double eta) {
        return pop * (std::pow(c, 1.0 - eta) - 1.0) / (1.0 - eta);
    };
    CHECK(crra(2.0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));  // oracle sanity
    CHECK(crra(1.0, 123.0, 1.45) == 0.0);

    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 40.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    OneParamPolicy pol(0.03, 100.0);
    pol.bind(nullptr, {100.0});
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    DiceModel model(grid, p);
    Trajectory tr = model.simulate(cfg);
    for (std::size_t i = 0; i < grid.steps(); ++i) {
        const double want = crra(scalar(tr.econ[i].cpc), model.exogenous().pop[i], p.elasmu);
        CHECK(scalar(tr.econ[i].util) == doctest::Approx(want).epsilon(1e-12));
    }
    // Concavity of the flow in consumption.
    const double mid = crra(2.0, 1.0, 1.45);
    CHECK(mid >= 0.5 * (crra(1.0, 1.0, 1.45) + crra(3.0, 1.0, 1.45)));
}

TEST_CASE("net output identity and cost split hold at every node") {
    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 100.0, 1.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    OneParamPolicy pol(0.03, 120.0);
    pol.bind(nullptr, {120.0});
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    Trajectory tr = DiceModel(grid, p).simulate(cfg);

    const double s = p.optlrsav();
    for (const NodeEcon& e : tr.econ) {
        const double want_y = scalar(e.ygross) * (1.0 - scalar(e.damfrac)) - scalar(e.cmu);
        CHECK(scalar(e.y) == doctest::Approx(want_y).epsilon(1e-12));
        CHECK(scalar(e.cons) == doctest::Approx((1.0 - s) * scalar(e.y)).epsilon(1e-12));
        // No extensions: bookings equal their instantaneous counterparts.
        CHECK(pv_equal_bits(e.ca.val, e.cmu.val));
        CHECK(pv_equal_bits(e.cd.val, e.cd0.val));
    }
}

TEST_CASE("full abatement zeroes industrial emissions") {
    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 25.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    PiecewisePolicy pol(grid.steps(), 1.0, std::vector<double>(grid.steps() - 1, 1.0));
    pol.bind(nullptr, std::vector<double>(grid.steps() - 1, 1.0));
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    Trajectory tr = DiceModel(grid, p).simulate(cfg);
    for (const NodeEcon& e : tr.econ) {
        CHECK(scalar(e.eind) == 0.0);
        CHECK(scalar(e.etot) == doctest::Approx(scalar(e.etot)));  // finite
    }
}

TEST_CASE("zero damages and zero abatement yield zero cost") {
    DiceParams p = DiceParams::dice2016();
    p.a2 = 0.0;
    TimeGrid grid = TimeGrid::uniform(2015.0, 25.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    PiecewisePolicy pol(grid.steps(), 0.0, std::vector<double>(grid.steps() - 1, 0.0));
    pol.bind(nullptr, std::vector<double>(grid.steps() - 1, 0.0));
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    Trajectory tr = DiceModel(grid, p).simulate(cfg);
    for (const NodeEcon& e : tr.econ) {
        CHECK(scalar(e.ca) == 0.0);
        CHECK(scalar(e.cd) == 0.0);
        CHECK(pv_equal_bits(e.y.val, e.ygross.val));
    }
}

TEST_CASE("raising one node's abatement lowers emissions there and warming later") {
    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 60.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    const std::size_t steps = grid.steps();
    const std::size_t bump_node = 4;

    auto run = [&](double mu_at_bump) {
        std::vector<double> vals(steps - 1, 0.2);
        vals[bump_node - 1] = mu_at_bump;
        PiecewisePolicy pol(steps, 0.03, vals);
        pol.bind(nullptr, vals);
        ModelConfig cfg;
        cfg.rates = &rs;
        cfg.policy = &pol;
        return DiceModel(grid, p).simulate(cfg);
    };
    Trajectory lo = run(0.2), hi = run(0.8);

    CHECK(scalar(hi.econ[bump_node].eind) < scalar(lo.econ[bump_node].eind));
    for (std::size_t i = bump_node + 1; i <= steps; ++i)
        CHECK(scalar(hi.tatm[i]) <= scalar(lo.tatm[i]));
    // Earlier nodes are untouched (causality).
    for (std::size_t i = 0; i < bump_node; ++i)
        CHECK(pv_equal_bits(hi.tatm[i].val, lo.tatm[i].val));
}

TEST_CASE("time-step refinement self-converges at first order") {
    DiceParams p = DiceParams::dice2016();
    auto tatm_at_end = [&](double horizon, double dt) {
        TimeGrid grid = TimeGrid::uniform(2015.0, horizon, dt);
        RateSystem rs = flat_deterministic(grid, p.prstp);
        OneParamPolicy pol(0.03, 100.0);
        pol.bind(nullptr, {100.0});
        ModelConfig cfg;
        cfg.rates = &rs;
        cfg.policy = &pol;
        Trajectory tr = DiceModel(grid, p).simulate(cfg);
        return scalar(tr.tatm.back());
    };

    // Five-year vs half-step run to mid-century.
    CHECK(std::abs(tatm_at_end(50.0, 5.0) - tatm_at_end(50.0, 2.5)) < 0.05);

    // Halving the step shrinks the change (first-order Euler behavior).
    const double d21 = std::abs(tatm_at_end(100.0, 2.0) - tatm_at_end(100.0, 1.0));
    const double d10 = std::abs(tatm_at_end(100.0, 1.0) - tatm_at_end(100.0, 0.5));
    CHECK(d10 < d21);
}

TEST_CASE("annual and five-year grids agree over the full horizon") {
    DiceParams p = DiceParams::dice2016();
    auto peak_tatm = [&](double dt) {
        TimeGrid grid = TimeGrid::uniform(2015.0, 500.0, dt);
        RateSystem rs = flat_deterministic(grid, p.prstp);
        OneParamPolicy pol(0.03, 100.0);
        pol.bind(nullptr, {100.0});
        ModelConfig cfg;
        cfg.rates = &rs;
        cfg.policy = &pol;
        Trajectory tr = DiceModel(grid, p).simulate(cfg);
        double peak = 0.0;
        for (const Value& v : tr.tatm) peak = std::max(peak, scalar(v));
        return peak;
    };
    CHECK(std::abs(peak_tatm(1.0) - peak_tatm(5.0)) < 0.1);
}

TEST_CASE("zero-volatility ensemble run is bitwise the deterministic run") {
    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 50.0, 1.0);
    HullWhiteModel hw(grid, HullWhiteModel::calibrate_flat(grid, 0.02, 0.0, p.prstp));
    RateSystem det = hw.simulate();
    BrownianDriver driver(grid, 9, 42);
    RateSystem mc = hw.simulate(driver);

    OneParamPolicy pol(0.03, 100.0);
    pol.bind(nullptr, {100.0});
    DiceModel model(grid, p);
    ModelConfig ca, cb;
    ca.rates = &det;
    ca.policy = &pol;
    cb.rates = &mc;
    cb.policy = &pol;
    Trajectory ta = model.simulate(ca), tb = model.simulate(cb);

    CHECK(pv_equal_bits(ta.welfare.val, tb.welfare.val));
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        CHECK(pv_equal_bits(ta.tatm[i].val, tb.tatm[i].val));
        CHECK(pv_equal_bits(ta.k[i].val, tb.k[i].val));
    }
}

TEST_CASE("consumption collapse trips the floor diagnostics, not NaNs") {
    DiceParams p = DiceParams::dice2016();
    p.a2 = 0.5;  // catastrophic damage coefficient
    TimeGrid grid = TimeGrid::uniform(2015.0, 150.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    PiecewisePolicy pol(grid.steps(), 0.0, std::vector<double>(grid.steps() - 1, 0.0));
    pol.bind(nullptr, std::vector<double>(grid.steps() - 1, 0.0));
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    Trajectory tr = DiceModel(grid, p).simulate(cfg);

    CHECK(tr.diag.cpc_floor_hits > 0);
    CHECK(tr.diag.damfrac_clamp_hits > 0);
    CHECK(std::isfinite(scalar(tr.welfare)));
    for (const NodeEcon& e : tr.econ) CHECK(scalar(e.cpc) >= p.cons_floor);
}

TEST_CASE("zero-valued shift leaves change nothing but expose signed adjoints") {
    DiceParams p = DiceParams::dice2016();
    TimeGrid grid = TimeGrid::uniform(2015.0, 100.0, 5.0);
    RateSystem rs = flat_deterministic(grid, p.prstp);
    DiceModel model(grid, p);

    OneParamPolicy plain(0.03, 100.0);
    plain.bind(nullptr, {100.0});
    ModelConfig base;
    base.rates = &rs;
    base.policy = &plain;
    Trajectory t0 = model.simulate(base);

    Tape tape;
    OneParamPolicy pol(0.03, 100.0);
    pol.bind(&tape, {100.0});
    ShiftLeaves shifts = ShiftLeaves::make(tape, grid.steps());
    ModelConfig cfg;
    cfg.rates = &rs;
    cfg.policy = &pol;
    cfg.shifts = &shifts;
    Trajectory tr = model.simulate(cfg);

    CHECK(pv_equal_bits(tr.welfare.val, t0.welfare.val));

    auto res = tape.backward(tr.welfare);
    for (std::size_t i : {std::size_t{0}, std::size_t{5}, std::size_t{15}}) {
        CHECK(res.gradient(shifts.consumption[i]) > 0.0);  // consumption is good
        CHECK(res.gradient(shifts.emission[i]) < 0.0);     // emissions are bad
    }
    // Marginal consumption matters less the later (and richer) it arrives.
    CHECK(res.gradient(shifts.consumption[0]) > res.gradient(shifts.consumption[15]));
}
