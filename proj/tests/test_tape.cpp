#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "sdice/tape.hpp"

using namespace sdice;

namespace {

// Central finite difference oracle for d f / d x_i.
double central_fd(const std::function<double(const std::vector<double>&)>& f,
                  std::vector<double> x, std::size_t i, double h) {
    x[i] += h;
    const double up = f(x);
    x[i] -= 2.0 * h;
    const double dn = f(x);
    return (up - dn) / (2.0 * h);
}

}  // namespace

TEST_CASE("scalar chain gradients match finite differences") {
    auto eval = [](const std::vector<double>& x) {
        Tape tape;
        Value a = tape.leaf(x[0]);
        Value b = tape.leaf(x[1]);
        Value f = exp_v(a * 0.3) * b + log_v(b) / a + pow_c(a, 2.5) - min_c(b, 2.0);
        return f.val.scalar();
    };
    std::vector<double> x{1.7, 1.3};

    Tape tape;
    Value a = tape.leaf(x[0]);
    Value b = tape.leaf(x[1]);
    Value f = exp_v(a * 0.3) * b + log_v(b) / a + pow_c(a, 2.5) - min_c(b, 2.0);
    BackwardResult back = tape.backward(f);

    for (std::size_t i = 0; i < 2; ++i) {
        const double fd = central_fd(eval, x, i, 1e-6);
        const double ad = back.gradient(i == 0 ? a : b);
        CHECK(ad == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("broadcast leaf into an ensemble expression") {
    PathVector v(std::vector<double>{0.5, 1.5, -0.25, 2.0});
    auto eval = [&](const std::vector<double>& x) {
        Tape tape;
        Value s = tape.leaf(x[0]);
        Value expr = expect(pow_c(s * make_const(v) + 1.0, 2.0));
        return expr.val.scalar();
    };
    std::vector<double> x{0.8};

    Tape tape;
    Value s = tape.leaf(x[0]);
    Value expr = expect(pow_c(s * make_const(v) + 1.0, 2.0));
    BackwardResult back = tape.backward(expr);

    const double fd = central_fd(eval, x, 0, 1e-6);
    CHECK(back.gradient(s) == doctest::Approx(fd).epsilon(1e-8));
    // Analytic: d/ds mean((s v + 1)^2) = mean(2 (s v + 1) v).
    double ref = 0.0;
    for (std::size_t p = 0; p < 4; ++p) ref += 2.0 * (x[0] * v.at(p) + 1.0) * v.at(p);
    ref /= 4.0;
    CHECK(back.gradient(s) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("clamp derivative is zero exactly at the clamp point") {
    Tape tape;
    Value at = tape.leaf(5.0);
    Value below = tape.leaf(4.0);
    Value above = tape.leaf(6.0);
    Value f = min_c(at, 5.0) + min_c(below, 5.0) + min_c(above, 5.0);
    BackwardResult back = tape.backward(f);
    CHECK(back.gradient(at) == 0.0);  // boundary counts as clamped
    CHECK(back.gradient(below) == 1.0);
    CHECK(back.gradient(above) == 0.0);

    Value g = max_c(at, 5.0);
    BackwardResult back2 = tape.backward(g);
    CHECK(back2.gradient(at) == 0.0);
}

TEST_CASE("step indicator has value but no derivative") {
    Tape tape;
    Value x = tape.leaf(1.2);
    Value ind = step_ge(x, 1.0);
    CHECK(ind.val.scalar() == 1.0);
    Value f = ind * x;
    BackwardResult back = tape.backward(f);
    CHECK(back.gradient(x) == doctest::Approx(1.0));  // only the smooth factor
}

TEST_CASE("power rule is safe at zero base") {
    Tape tape;
    Value x = tape.leaf(0.0);
    Value f = pow_c(x, 2.6);
    BackwardResult back = tape.backward(f);
    CHECK(f.val.scalar() == 0.0);
    CHECK(back.gradient(x) == 0.0);
    CHECK(std::isfinite(back.gradient(x)));
}

TEST_CASE("linear combination against constants") {
    Tape tape;
    Value x0 = tape.leaf(2.0);
    Value x1 = tape.leaf(-1.0);
    PathVector w0(std::vector<double>{1.0, 2.0});
    PathVector w1(std::vector<double>{3.0, -1.0});
    Value combo = lincomb({x0, x1, make_const(5.0)}, {w0, w1, PathVector(10.0)});
    // Per path: w0*x0 + w1*x1 + 10*5.
    CHECK(combo.val.at(0) == doctest::Approx(1.0 * 2.0 + 3.0 * -1.0 + 50.0));
    CHECK(combo.val.at(1) == doctest::Approx(2.0 * 2.0 + -1.0 * -1.0 + 50.0));

    Value f = expect(combo);
    BackwardResult back = tape.backward(f);
    CHECK(back.gradient(x0) == doctest::Approx(1.5));   // mean of w0
    CHECK(back.gradient(x1) == doctest::Approx(1.0));   // mean of w1
}

TEST_CASE("expectation adjoint distributes 1/n over expanded ensembles only") {
    Tape tape;
    Value s = tape.leaf(3.0);
    // Scalar stays scalar through expect: derivative 1.
    Value f = expect(s * 2.0);
    CHECK(tape.backward(f).gradient(s) == doctest::Approx(2.0));

    PathVector v(std::vector<double>{1.0, 3.0, 5.0, 7.0});
    Value g = expect(s * make_const(v));
    CHECK(tape.backward(g).gradient(s) == doctest::Approx(4.0));  // mean(v)
}

TEST_CASE("multiple backward sweeps on one tape are independent") {
    Tape tape;
    Value x = tape.leaf(1.5);
    Value y = tape.leaf(2.5);
    Value f1 = x * y;
    Value f2 = x + pow_c(y, 2.0);
    BackwardResult b1 = tape.backward(f1);
    BackwardResult b2 = tape.backward(f2);
    CHECK(b1.gradient(x) == doctest::Approx(2.5));
    CHECK(b1.gradient(y) == doctest::Approx(1.5));
    CHECK(b2.gradient(x) == doctest::Approx(1.0));
    CHECK(b2.gradient(y) == doctest::Approx(5.0));
}

TEST_CASE("leaf-only retention releases interior adjoints") {
    Tape tape;
    Value x = tape.leaf(2.0);
    Value mid = x * x;
    Value f = mid + 1.0;
    BackwardResult back = tape.backward(f);
    CHECK(back.gradient(x) == doctest::Approx(4.0));
    CHECK_THROWS_AS(back.of(mid), std::logic_error);

    BackwardResult all = tape.backward(f, Tape::Keep::all);
    CHECK(all.of(mid).scalar() == doctest::Approx(1.0));

    // Constants have zero adjoint and never throw.
    Value c = make_const(7.0);
    CHECK(back.of(c).scalar() == 0.0);
}

TEST_CASE("fused multiply-add differentiates all three slots") {
    auto eval = [](const std::vector<double>& x) {
        Tape tape;
        Value a = tape.leaf(x[0]), b = tape.leaf(x[1]), c = tape.leaf(x[2]);
        return fma_v(a, b, c).val.scalar();
    };
    std::vector<double> x{1.0, 2.0, 3.0};
    Tape tape;
    Value a = tape.leaf(x[0]), b = tape.leaf(x[1]), c = tape.leaf(x[2]);
    Value f = fma_v(a, b, c);
    BackwardResult back = tape.backward(f);
    CHECK(back.gradient(a) == doctest::Approx(central_fd(eval, x, 0, 1e-6)));
    CHECK(back.gradient(b) == doctest::Approx(central_fd(eval, x, 1, 1e-6)));
    CHECK(back.gradient(c) == doctest::Approx(central_fd(eval, x, 2, 1e-6)));
}

TEST_CASE("operands recorded on different tapes are rejected") {
    Tape t1, t2;
    Value a = t1.leaf(1.0);
    Value b = t2.leaf(2.0);
    CHECK_THROWS_AS(a * b, std::logic_error);
}
