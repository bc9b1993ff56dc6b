#include "sdice/path_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sdice {

namespace {

void check_sizes(const PathVector& a, const PathVector& b) {
    if (!a.is_scalar() && !b.is_scalar() && a.size() != b.size())
        throw std::logic_error("PathVector: ensemble size mismatch");
}

template <class F>
PathVector zip(const PathVector& a, const PathVector& b, F f) {
    check_sizes(a, b);
    if (a.is_scalar() && b.is_scalar()) return PathVector(f(a.scalar(), b.scalar()));
    const std::size_t n = a.is_scalar() ? b.size() : a.size();
    std::vector<double> out(n);
    if (a.is_scalar()) {
        const double s = a.scalar();
        const double* pb = b.values().data();
        for (std::size_t i = 0; i < n; ++i) out[i] = f(s, pb[i]);
    } else if (b.is_scalar()) {
        const double s = b.scalar();
        const double* pa = a.values().data();
        for (std::size_t i = 0; i < n; ++i) out[i] = f(pa[i], s);
    } else {
        const double* pa = a.values().data();
        const double* pb = b.values().data();
        for (std::size_t i = 0; i < n; ++i) out[i] = f(pa[i], pb[i]);
    }
    return PathVector(std::move(out));
}

template <class F>
PathVector map(const PathVector& a, F f) {
    if (a.is_scalar()) return PathVector(f(a.scalar()));
    const std::vector<double>& v = a.values();
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f(v[i]);
    return PathVector(std::move(out));
}

}  // namespace

PathVector::PathVector(std::vector<double> v)
    : vec_(std::make_shared<const std::vector<double>>(std::move(v))) {}

double PathVector::scalar() const {
    if (vec_) throw std::logic_error("PathVector: expanded ensemble has no single scalar");
    return scalar_;
}

const std::vector<double>& PathVector::values() const {
    if (!vec_) throw std::logic_error("PathVector: scalar has no vector payload");
    return *vec_;
}

PathVector pv_add(const PathVector& a, const PathVector& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}

PathVector pv_sub(const PathVector& a, const PathVector& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
}

PathVector pv_mul(const PathVector& a, const PathVector& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

PathVector pv_div(const PathVector& a, const PathVector& b) {
    return zip(a, b, [](double x, double y) { return x / y; });
}

PathVector pv_neg(const PathVector& a) {
    return map(a, [](double x) { return -x; });
}

PathVector pv_affine(const PathVector& a, double m, double c) {
    return map(a, [m, c](double x) { return m * x + c; });
}

PathVector pv_muladd(const PathVector& a, const PathVector& b, const PathVector& c) {
    check_sizes(a, b);
    check_sizes(a, c);
    check_sizes(b, c);
    if (a.is_scalar() && b.is_scalar() && c.is_scalar())
        return PathVector(a.scalar() + b.scalar() * c.scalar());
    const std::size_t n = !a.is_scalar() ? a.size() : (!b.is_scalar() ? b.size() : c.size());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a.at(i) + b.at(i) * c.at(i);
    return PathVector(std::move(out));
}

PathVector pv_pow(const PathVector& a, double k) {
    return map(a, [k](double x) { return std::pow(x, k); });
}

PathVector pv_exp(const PathVector& a) {
    return map(a, [](double x) { return std::exp(x); });
}

PathVector pv_log(const PathVector& a) {
    return map(a, [](double x) { return std::log(x); });
}

PathVector pv_min(const PathVector& a, double k) {
    return map(a, [k](double x) { return x < k ? x : k; });
}

PathVector pv_max(const PathVector& a, double k) {
    return map(a, [k](double x) { return x > k ? x : k; });
}

PathVector pv_step_ge(const PathVector& a, double k) {
    return map(a, [k](double x) { return x >= k ? 1.0 : 0.0; });
}

double pairwise_sum(const double* x, std::size_t n) {
    // Fixed 64-element base blocks keep the reduction tree shape a function of n
    // alone, so the result never depends on threading or chunking elsewhere.
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double pv_mean(const PathVector& a) {
    if (a.is_scalar()) return a.scalar();
    const std::vector<double>& v = a.values();
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

double pv_quantile(const PathVector& a, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("pv_quantile: alpha outside [0,1]");
    if (a.is_scalar()) return a.scalar();
    std::vector<double> v = a.values();  // working copy
    const std::size_t n = v.size();
    const double h = (static_cast<double>(n) - 1.0) * alpha;
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double xlo = v[lo];
    if (frac == 0.0 || lo + 1 >= n) return xlo;
    const double xhi = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return xlo + frac * (xhi - xlo);
}

double pv_min_all(const PathVector& a) {
    if (a.is_scalar()) return a.scalar();
    return *std::min_element(a.values().begin(), a.values().end());
}

double pv_max_all(const PathVector& a) {
    if (a.is_scalar()) return a.scalar();
    return *std::max_element(a.values().begin(), a.values().end());
}

std::size_t pv_count_lt(const PathVector& a, double k, std::size_t n_paths) {
    if (a.is_scalar()) return a.scalar() < k ? n_paths : 0;
    std::size_t c = 0;
    for (double x : a.values())
        if (x < k) ++c;
    return c;
}

bool pv_equal_bits(const PathVector& a, const PathVector& b) {
    const auto same_bits = [](double x, double y) {
        return std::memcmp(&x, &y, sizeof(double)) == 0;
    };
    if (a.is_scalar() && b.is_scalar()) return same_bits(a.scalar(), b.scalar());
    if (!a.is_scalar() && !b.is_scalar()) {
        if (a.size() != b.size()) return false;
        return std::memcmp(a.values().data(), b.values().data(),
                           a.size() * sizeof(double)) == 0;
    }
    // Mixed representation: a scalar is a compressed constant ensemble, so it
    // equals an expanded vector whose every entry carries the same bit pattern.
    const PathVector& v = a.is_scalar() ? b : a;
    const double s = a.is_scalar() ? a.scalar() : b.scalar();
    for (double x : v.values())
        if (!same_bits(x, s)) return false;
    return true;
}

}  // namespace sdice
