#pragma once

// Monte Carlo ensemble values with scalar compression.
//
// A PathVector holds one number per simulated path, or -- the common case in a
// model where most state is deterministic -- a single scalar broadcast across
// all paths. Arithmetic stays in the compressed representation whenever both
// operands are scalar, so a fully deterministic simulation runs at scalar cost
// through exactly the same code path as a stochastic one.
//
// PathVectors are immutable; vector payloads are shared (copy = refcount bump).
// Reductions use a fixed-shape pairwise summation so results do not depend on
// accumulation order and are reproducible bit-for-bit across runs.

#include <cstddef>
#include <memory>
#include <vector>

namespace sdice {

class PathVector {
  public:
    PathVector() = default;
    PathVector(double c) : scalar_(c) {}  // implicit: scalar constants are pervasive
    explicit PathVector(std::vector<double> v);

    bool is_scalar() const { return vec_ == nullptr; }
    // Paths covered by an expanded vector; 0 for a scalar (broadcasts to any n).
    std::size_t size() const { return vec_ ? vec_->size() : 0; }

    double scalar() const;                      // requires is_scalar()
    const std::vector<double>& values() const;  // requires !is_scalar()

    // Value on a given path (broadcasts scalars).
    double at(std::size_t path) const { return vec_ ? (*vec_)[path] : scalar_; }

  private:
    double scalar_ = 0.0;
    std::shared_ptr<const std::vector<double>> vec_;
};

// --- elementwise kernels (scalar-compressed; mixed operands broadcast) ---

PathVector pv_add(const PathVector& a, const PathVector& b);
PathVector pv_sub(const PathVector& a, const PathVector& b);
PathVector pv_mul(const PathVector& a, const PathVector& b);
PathVector pv_div(const PathVector& a, const PathVector& b);
PathVector pv_neg(const PathVector& a);
// m*a + c with scalar coefficients (single fused pass).
PathVector pv_affine(const PathVector& a, double m, double c);
// a + b*c (fused multiply-add; the workhorse of explicit time stepping).
PathVector pv_muladd(const PathVector& a, const PathVector& b, const PathVector& c);
PathVector pv_pow(const PathVector& a, double k);
PathVector pv_exp(const PathVector& a);
PathVector pv_log(const PathVector& a);
PathVector pv_min(const PathVector& a, double k);   // min(a, k)
PathVector pv_max(const PathVector& a, double k);   // max(a, k)
// Indicator 1{a >= k} (0/1 valued; flat almost everywhere).
PathVector pv_step_ge(const PathVector& a, double k);

// --- reductions and summaries ---

// Order-independent deterministic sum of a raw buffer (pairwise, fixed blocks).
double pairwise_sum(const double* x, std::size_t n);

// Ensemble mean; a scalar reduces to itself regardless of path count.
double pv_mean(const PathVector& a);
// Linearly interpolated order statistic (the "type 7" convention: with n values
// sorted ascending, quantile(alpha) = x[h] + frac(h)*(x[h+1]-x[h]),
// h = (n-1)*alpha). A scalar reduces to itself.
double pv_quantile(const PathVector& a, double alpha);
double pv_min_all(const PathVector& a);
double pv_max_all(const PathVector& a);
// Number of paths with value strictly below k (scalars count as n_paths or 0).
std::size_t pv_count_lt(const PathVector& a, double k, std::size_t n_paths);

// Exact representation equality (same compression state and same bits); test helper.
// Representation-agnostic bit equality of the abstract ensembles: a scalar
// equals an expanded vector whose every entry carries the same bit pattern.
bool pv_equal_bits(const PathVector& a, const PathVector& b);

}  // namespace sdice
