#include "sdice/policy.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdice/path_vector.hpp"
#include "sdice/tape.hpp"

using namespace sdice;

TEST_CASE("one_param ramp hits the book values") {
    OneParamPolicy pol(0.03, 100.0);
    pol.bind(nullptr, {100.0});

    CHECK(pol.mu(0, 0.0, Value()).val.scalar() == doctest::Approx(0.03).epsilon(1e-15));
    // mu(50) = 0.03 + 0.97 * 50/100 = 0.515.
    CHECK(pol.mu(0, 50.0, Value()).val.scalar() == doctest::Approx(0.515).epsilon(1e-12));
    CHECK(pol.mu(0, 100.0, Value()).val.scalar() == 1.0);
    CHECK(pol.mu(0, 380.0, Value()).val.scalar() == 1.0);  // saturated

    // Monotone nondecreasing ramp.
    double prev = -1.0;
    for (double t = 0.0; t <= 120.0; t += 7.5) {
        const double m = pol.mu(0, t, Value()).val.scalar();
        CHECK(m >= prev);
        CHECK(m <= 1.0);
        prev = m;
    }

    CHECK_THROWS_AS(pol.bind(nullptr, {-3.0}), std::invalid_argument);
    CHECK_THROWS_AS(pol.bind(nullptr, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("linear_stochastic responds to the rate and floors at zero") {
    LinearStochasticPolicy pol(0.03, 0.01, -0.5);
    pol.bind(nullptr, {0.01, -0.5});

    // rho = 4%: speed = 0.01 - 0.5*0.04 = -0.01; raw at t=10 is -0.07 -> floored.
    CHECK(pol.mu(0, 10.0, Value(PathVector(0.04))).val.scalar() == 0.0);
    // rho = 0: plain ramp 0.03 + 0.01*10 = 0.13.
    CHECK(pol.mu(0, 10.0, Value(PathVector(0.0))).val.scalar() ==
          doctest::Approx(0.13).epsilon(1e-15));

    // Higher rate on one path means lower abatement on that path (a1 < 0).
    PathVector rho(std::vector<double>{0.00, 0.02, 0.05});
    PathVector mu = pol.mu(0, 20.0, Value(rho)).val;
    CHECK(mu.at(0) > mu.at(1));
    CHECK(mu.at(1) > mu.at(2));
    // And everything stays inside [0, 1].
    CHECK(pv_min_all(mu) >= 0.0);
    CHECK(pv_max_all(mu) <= 1.0);
}

TEST_CASE("zero-slope linear_stochastic is bitwise the one_param ramp") {
    const double mu0 = 0.03, t_full = 137.0;
    OneParamPolicy one(mu0, t_full);
    one.bind(nullptr, {t_full});

    LinearStochasticPolicy lin(mu0, 0.0, 0.0);
    // Matched speed computed with the same float operations bind() uses.
    lin.bind(nullptr, {(1.0 - mu0) * (1.0 / t_full), 0.0});

    PathVector rho(std::vector<double>{-0.01, 0.0, 0.015, 0.07});
    for (double t : {0.0, 1.0, 17.0, 59.5, 133.0, 137.0, 220.0}) {
        PathVector a = one.mu(0, t, Value(rho)).val;
        PathVector b = lin.mu(0, t, Value(rho)).val;
        CHECK(pv_equal_bits(a, b));
    }
}

TEST_CASE("piecewise policy pins the first node and exposes free leaves") {
    const std::size_t steps = 5;
    PiecewisePolicy pol(steps, 0.03, {0.1, 0.2, 0.3, 1.0});

    auto specs = pol.param_specs();
    REQUIRE(specs.size() == steps - 1);
    CHECK(specs[0].name == "mu_1");
    CHECK(specs[3].init == 1.0);
    CHECK(specs[0].lo == 0.0);
    CHECK(specs[0].hi == 1.0);

    Tape tape;
    pol.bind(&tape, {0.1, 0.2, 0.3, 1.0});
    CHECK(pol.mu(0, 0.0, Value()).val.scalar() == 0.03);
    CHECK_FALSE(pol.mu(0, 0.0, Value()).recorded());  // pinned start is constant
    CHECK(pol.mu(3, 3.0, Value()).val.scalar() == 0.3);
    CHECK(pol.mu(3, 3.0, Value()).recorded());

    // Raw leaves carry no clamp, so boundary values keep unit gradients.
    Value root = pol.mu(4, 4.0, Value()) * 2.0;
    auto res = tape.backward(root);
    CHECK(res.gradient(pol.leaf(4)) == 2.0);

    CHECK_THROWS_AS(pol.leaf(0), std::out_of_range);
    CHECK_THROWS_AS((void)pol.mu(7, 7.0, Value()), std::out_of_range);
    CHECK_THROWS_AS(PiecewisePolicy(3, 0.03, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePolicy(3, 0.03, {0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("policy parameters differentiate through the ramp") {
    Tape tape;
    OneParamPolicy pol(0.03, 80.0);
    pol.bind(&tape, {80.0});

    // mu(t) = mu0 + (1-mu0) t / T on the unsaturated branch:
    // d mu / d T = -(1-mu0) t / T^2.
    const double t = 40.0;
    Value m = pol.mu(0, t, Value());
    const double expected = -(1.0 - 0.03) * t / (80.0 * 80.0);
    // Central finite difference through the public interface as oracle.
    OneParamPolicy lo(0.03, 80.0), hi(0.03, 80.0);
    lo.bind(nullptr, {80.0 - 1e-5});
    hi.bind(nullptr, {80.0 + 1e-5});
    const double fd =
        (hi.mu(0, t, Value()).val.scalar() - lo.mu(0, t, Value()).val.scalar()) / 2e-5;
    CHECK(fd == doctest::Approx(expected).epsilon(1e-6));

    // Adjoint gradient: replicate the exact recording bind()/mu() produce with
    // the leaf in hand, and check backward() against the analytic derivative.
    Tape tape2;
    Value t_leaf = tape2.leaf(80.0);
    Value speed = affine(1.0 / t_leaf, 1.0 - 0.03, 0.0);
    Value raw = fma_v(Value(0.03), speed, Value(t));
    Value mu2 = min_c(max_c(raw, 0.0), 1.0);
    auto res2 = tape2.backward(mu2);
    CHECK(res2.gradient(t_leaf) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pv_equal_bits(mu2.val, m.val));
}
