#pragma once

// Reverse-mode differentiation on ensemble values.
//
// Evaluation is eager: every operation computes its PathVector result
// immediately. When an operand is tied to a Tape, the operation also records a
// node (operator overloading, no expression templates), so a later backward
// sweep can accumulate adjoints from any recorded scalar result down to the
// leaves. Operands that are *not* recorded (exogenous schedules, simulated rate
// paths, discount factors, funding weights) enter as plain values stored on the
// node; they are constants of the differentiation and get no adjoint.
//
// Adjoint shapes follow value shapes: the adjoint of a vector-valued node is
// accumulated per path, while any vector contribution arriving at a
// scalar-valued node (a broadcast constant feeding a stochastic expression) is
// summed over paths with the same fixed-shape pairwise reduction used
// everywhere else, keeping gradients deterministic.

#include <cstdint>
#include <vector>

#include "sdice/path_vector.hpp"

namespace sdice {

class Tape;

// Handle to an eagerly computed value, optionally recorded on a tape.
struct Value {
    PathVector val;
    std::int32_t node = -1;  // -1: constant (not recorded)
    Tape* tape = nullptr;

    Value() = default;
    Value(double c) : val(c) {}  // implicit scalar constant
    explicit Value(PathVector v) : val(std::move(v)) {}
    Value(PathVector v, std::int32_t n, Tape* t) : val(std::move(v)), node(n), tape(t) {}

    bool recorded() const { return node >= 0; }
};

// Constant ensemble value (never differentiated).
inline Value make_const(PathVector v) { return Value(std::move(v)); }

enum class Op : std::uint8_t {
    leaf,
    add,      // a + b
    sub,      // a - b
    mul,      // a * b
    div,      // a / b
    neg,      // -a
    affine,   // k0*a + k1
    pow_k,    // a^k0
    exp_e,    // exp(a)
    log_e,    // log(a)
    min_k,    // min(a, k0); derivative 1{a < k0} (0 at the kink)
    max_k,    // max(a, k0); derivative 1{a > k0} (0 at the kink)
    step_ge,  // 1{a >= k0}; derivative 0 everywhere
    mul_add,  // a + b*c
    expect,   // ensemble mean -> scalar
    lin_comb  // sum_j w_j * x_j with constant ensemble weights w_j
};

struct TapeNode {
    Op op;
    std::int32_t a = -1, b = -1, c = -1;  // parent node ids (-1: constant operand)
    double k0 = 0.0, k1 = 0.0;
    PathVector va, vb, vc;  // operand values (shared buffers, cheap copies)
    PathVector out;         // this node's value (shape drives adjoint shape)
    std::int32_t ext = -1;  // lin_comb side-table index
};

// Adjoints produced by one backward sweep. By default only leaf adjoints are
// retained (interior slots are released as the sweep passes them, keeping the
// footprint small on large ensembles).
class BackwardResult {
  public:
    // Adjoint of a recorded value; scalar 0 for constants / unkept nodes.
    const PathVector& of(const Value& v) const;
    // Scalar gradient entry for a scalar leaf (sums a vector adjoint if needed).
    double gradient(const Value& leaf) const;

  private:
    friend class Tape;
    std::vector<PathVector> adj_;
    std::vector<char> kept_;
    PathVector zero_;
};

class Tape {
  public:
    enum class Keep { leaves, all };

    // Differentiable scalar input (optimization parameter, shift variable).
    Value leaf(double v);
    Value leaf(PathVector v);

    std::size_t size() const { return nodes_.size(); }
    void clear();

    // Reverse sweep from a recorded root. Seeds the root adjoint with 1 and
    // accumulates towards node 0. May be called repeatedly with different
    // roots on the same tape.
    BackwardResult backward(const Value& root, Keep keep = Keep::leaves) const;

    // --- recording (used by the Value operators below) ---
    Value record1(Op op, const Value& a, double k0, double k1, PathVector out);
    Value record2(Op op, const Value& a, const Value& b, PathVector out);
    Value record3(Op op, const Value& a, const Value& b, const Value& c, PathVector out);
    Value record_lincomb(const std::vector<Value>& xs, const std::vector<PathVector>& ws,
                         PathVector out);

  private:
    struct LinCombData {
        std::vector<std::int32_t> parents;
        std::vector<PathVector> weights;
    };
    std::vector<TapeNode> nodes_;
    std::vector<LinCombData> lincombs_;
};

// --- eager operations (record iff an operand is recorded) ---

Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
Value operator/(const Value& a, const Value& b);
Value operator-(const Value& a);
Value operator+(const Value& a, double k);
Value operator+(double k, const Value& a);
Value operator-(const Value& a, double k);
Value operator-(double k, const Value& a);
Value operator*(const Value& a, double k);
Value operator*(double k, const Value& a);
Value operator/(const Value& a, double k);
Value operator/(double k, const Value& a);

Value affine(const Value& a, double m, double c);  // m*a + c, one node
Value pow_c(const Value& a, double k);
Value exp_v(const Value& a);
Value log_v(const Value& a);
Value min_c(const Value& a, double k);
Value max_c(const Value& a, double k);
Value step_ge(const Value& a, double k);
Value fma_v(const Value& a, const Value& b, const Value& c);  // a + b*c
Value expect(const Value& a);
// sum_j ws[j]*xs[j]; ws are constants of the differentiation.
Value lincomb(const std::vector<Value>& xs, const std::vector<PathVector>& ws);

}  // namespace sdice
