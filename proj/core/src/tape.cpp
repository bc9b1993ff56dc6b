#include "sdice/tape.hpp"

#include <cmath>
#include <stdexcept>

namespace sdice {

namespace {

Tape* common_tape(const Value* a, const Value* b = nullptr, const Value* c = nullptr) {
    Tape* t = nullptr;
    for (const Value* v : {a, b, c}) {
        if (!v || !v->recorded()) continue;
        if (!t)
            t = v->tape;
        else if (t != v->tape)
            throw std::logic_error("tape: operands recorded on different tapes");
    }
    return t;
}

// 1{x < k} and 1{x > k} as ensemble values (clamp derivatives; 0 at the kink).
PathVector indicator_lt(const PathVector& a, double k) {
    if (a.is_scalar()) return PathVector(a.scalar() < k ? 1.0 : 0.0);
    std::vector<double> out(a.size());
    const auto& v = a.values();
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < k ? 1.0 : 0.0;
    return PathVector(std::move(out));
}

PathVector indicator_gt(const PathVector& a, double k) {
    if (a.is_scalar()) return PathVector(a.scalar() > k ? 1.0 : 0.0);
    std::vector<double> out(a.size());
    const auto& v = a.values();
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > k ? 1.0 : 0.0;
    return PathVector(std::move(out));
}

// Deterministic pairwise dot product over (possibly broadcast) ensembles.
double pairwise_dot(const PathVector& g, const PathVector& w, std::size_t off, std::size_t n) {
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += g.at(off + i) * w.at(off + i);
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_dot(g, w, off, h) + pairwise_dot(g, w, off + h, n - h);
}

// Adjoint accumulator for one node. The semantic adjoint is `s` broadcast over
// the ensemble plus the elementwise vector part `v` (if materialized). Vector
// contributions to scalar-shaped slots are path-summed on arrival.
struct AdjAcc {
    double s = 0.0;
    std::vector<double> v;
    bool has_v = false;
    bool touched = false;
    bool vec_shape = false;
    std::size_t n = 0;

    void shape_from(const PathVector& out) {
        if (touched) return;
        touched = true;
        vec_shape = !out.is_scalar();
        n = out.size();
    }

    void add(const PathVector& g, double scale) {
        if (g.is_scalar()) {
            s += scale * g.scalar();
            return;
        }
        if (!vec_shape) {
            s += scale * pairwise_sum(g.values().data(), g.size());
            return;
        }
        if (!has_v) {
            v.assign(n, 0.0);
            has_v = true;
        }
        const auto& gv = g.values();
        for (std::size_t i = 0; i < n; ++i) v[i] += scale * gv[i];
    }

    void add_prod(const PathVector& g, const PathVector& w, double scale) {
        if (g.is_scalar() && w.is_scalar()) {
            s += scale * g.scalar() * w.scalar();
            return;
        }
        if (!vec_shape) {
            const std::size_t m = g.is_scalar() ? w.size() : g.size();
            s += scale * pairwise_dot(g, w, 0, m);
            return;
        }
        if (!has_v) {
            v.assign(n, 0.0);
            has_v = true;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] += scale * g.at(i) * w.at(i);
    }

    PathVector materialize() {
        if (!has_v) return PathVector(s);
        if (s != 0.0)
            for (double& x : v) x += s;
        has_v = false;
        return PathVector(std::move(v));
    }
};

}  // namespace

Value Tape::leaf(double v) { return leaf(PathVector(v)); }

Value Tape::leaf(PathVector v) {
    TapeNode n;
    n.op = Op::leaf;
    n.out = v;
    nodes_.push_back(std::move(n));
    return Value{std::move(v), static_cast<std::int32_t>(nodes_.size() - 1), this};
}

void Tape::clear() {
    nodes_.clear();
    lincombs_.clear();
}

Value Tape::record1(Op op, const Value& a, double k0, double k1, PathVector out) {
    TapeNode n;
    n.op = op;
    n.a = a.node;
    n.k0 = k0;
    n.k1 = k1;
    n.va = a.val;
    n.out = out;
    nodes_.push_back(std::move(n));
    return Value{std::move(out), static_cast<std::int32_t>(nodes_.size() - 1), this};
}

Value Tape::record2(Op op, const Value& a, const Value& b, PathVector out) {
    TapeNode n;
    n.op = op;
    n.a = a.node;
    n.b = b.node;
    n.va = a.val;
    n.vb = b.val;
    n.out = out;
    nodes_.push_back(std::move(n));
    return Value{std::move(out), static_cast<std::int32_t>(nodes_.size() - 1), this};
}

Value Tape::record3(Op op, const Value& a, const Value& b, const Value& c, PathVector out) {
    TapeNode n;
    n.op = op;
    n.a = a.node;
    n.b = b.node;
    n.c = c.node;
    n.va = a.val;
    n.vb = b.val;
    n.vc = c.val;
    n.out = out;
    nodes_.push_back(std::move(n));
    return Value{std::move(out), static_cast<std::int32_t>(nodes_.size() - 1), this};
}

Value Tape::record_lincomb(const std::vector<Value>& xs, const std::vector<PathVector>& ws,
                           PathVector out) {
    LinCombData data;
    data.parents.reserve(xs.size());
    data.weights.reserve(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (!xs[j].recorded()) continue;  // constant terms carry no adjoint
        data.parents.push_back(xs[j].node);
        data.weights.push_back(ws[j]);
    }
    lincombs_.push_back(std::move(data));
    TapeNode n;
    n.op = Op::lin_comb;
    n.ext = static_cast<std::int32_t>(lincombs_.size() - 1);
    n.out = out;
    nodes_.push_back(std::move(n));
    return Value{std::move(out), static_cast<std::int32_t>(nodes_.size() - 1), this};
}

BackwardResult Tape::backward(const Value& root, Keep keep) const {
    if (!root.recorded() || root.tape != this)
        throw std::logic_error("tape backward: root is not recorded on this tape");

    std::vector<AdjAcc> slot(nodes_.size());
    slot[root.node].shape_from(nodes_[root.node].out);
    slot[root.node].add(PathVector(1.0), 1.0);

    BackwardResult res;
    res.adj_.resize(nodes_.size());
    res.kept_.assign(nodes_.size(), 0);

    for (std::int32_t i = root.node; i >= 0; --i) {
        AdjAcc& acc = slot[i];
        if (!acc.touched) continue;
        const TapeNode& nd = nodes_[i];
        const PathVector g = acc.materialize();

        const bool keep_this = keep == Keep::all || nd.op == Op::leaf;
        if (keep_this) {
            res.adj_[i] = g;
            res.kept_[i] = 1;
        } else {
            res.kept_[i] = 2;  // touched, then released by Keep::leaves
        }

        auto to = [&](std::int32_t p) -> AdjAcc* {
            if (p < 0) return nullptr;
            AdjAcc& s = slot[p];
            s.shape_from(nodes_[p].out);
            return &s;
        };

        switch (nd.op) {
            case Op::leaf:
                break;
            case Op::add:
                if (auto* s = to(nd.a)) s->add(g, 1.0);
                if (auto* s = to(nd.b)) s->add(g, 1.0);
                break;
            case Op::sub:
                if (auto* s = to(nd.a)) s->add(g, 1.0);
                if (auto* s = to(nd.b)) s->add(g, -1.0);
                break;
            case Op::mul:
                if (auto* s = to(nd.a)) s->add_prod(g, nd.vb, 1.0);
                if (auto* s = to(nd.b)) s->add_prod(g, nd.va, 1.0);
                break;
            case Op::div: {
                const PathVector inv_b = pv_div(1.0, nd.vb);
                if (auto* s = to(nd.a)) s->add_prod(g, inv_b, 1.0);
                if (auto* s = to(nd.b)) s->add_prod(g, pv_mul(nd.out, inv_b), -1.0);
                break;
            }
            case Op::neg:
                if (auto* s = to(nd.a)) s->add(g, -1.0);
                break;
            case Op::affine:
                if (auto* s = to(nd.a)) s->add(g, nd.k0);
                break;
            case Op::pow_k:
                if (auto* s = to(nd.a)) s->add_prod(g, pv_pow(nd.va, nd.k0 - 1.0), nd.k0);
                break;
            case Op::exp_e:
                if (auto* s = to(nd.a)) s->add_prod(g, nd.out, 1.0);
                break;
            case Op::log_e:
                if (auto* s = to(nd.a)) s->add_prod(g, pv_div(1.0, nd.va), 1.0);
                break;
            case Op::min_k:
                if (auto* s = to(nd.a)) s->add_prod(g, indicator_lt(nd.va, nd.k0), 1.0);
                break;
            case Op::max_k:
                if (auto* s = to(nd.a)) s->add_prod(g, indicator_gt(nd.va, nd.k0), 1.0);
                break;
            case Op::step_ge:
                break;  // flat almost everywhere; no sensitivity flows through
            case Op::mul_add:
                if (auto* s = to(nd.a)) s->add(g, 1.0);
                if (auto* s = to(nd.b)) s->add_prod(g, nd.vc, 1.0);
                if (auto* s = to(nd.c)) s->add_prod(g, nd.vb, 1.0);
                break;
            case Op::expect:
                if (auto* s = to(nd.a)) {
                    if (nd.va.is_scalar())
                        s->add(g, 1.0);
                    else
                        s->add(g, 1.0 / static_cast<double>(nd.va.size()));
                }
                break;
            case Op::lin_comb: {
                const LinCombData& lc = lincombs_[nd.ext];
                for (std::size_t j = 0; j < lc.parents.size(); ++j)
                    if (auto* s = to(lc.parents[j])) s->add_prod(g, lc.weights[j], 1.0);
                break;
            }
        }
    }
    return res;
}

const PathVector& BackwardResult::of(const Value& v) const {
    if (!v.recorded()) return zero_;
    const char k = kept_[static_cast<std::size_t>(v.node)];
    if (k == 0) return zero_;  // sweep never reached it: adjoint is exactly zero
    if (k == 2)
        throw std::logic_error("tape backward: adjoint was not retained for this node");
    return adj_[static_cast<std::size_t>(v.node)];
}

double BackwardResult::gradient(const Value& leaf) const {
    const PathVector& a = of(leaf);
    if (a.is_scalar()) return a.scalar();
    return pairwise_sum(a.values().data(), a.size());
}

// --- eager operator layer ---

namespace {

Value dispatch1(Op op, const Value& a, double k0, double k1, PathVector out) {
    if (Tape* t = common_tape(&a)) return t->record1(op, a, k0, k1, std::move(out));
    return Value(std::move(out));
}

Value dispatch2(Op op, const Value& a, const Value& b, PathVector out) {
    if (Tape* t = common_tape(&a, &b)) return t->record2(op, a, b, std::move(out));
    return Value(std::move(out));
}

Value dispatch3(Op op, const Value& a, const Value& b, const Value& c, PathVector out) {
    if (Tape* t = common_tape(&a, &b, &c)) return t->record3(op, a, b, c, std::move(out));
    return Value(std::move(out));
}

}  // namespace

Value operator+(const Value& a, const Value& b) { return dispatch2(Op::add, a, b, pv_add(a.val, b.val)); }
Value operator-(const Value& a, const Value& b) { return dispatch2(Op::sub, a, b, pv_sub(a.val, b.val)); }
Value operator*(const Value& a, const Value& b) { return dispatch2(Op::mul, a, b, pv_mul(a.val, b.val)); }
Value operator/(const Value& a, const Value& b) { return dispatch2(Op::div, a, b, pv_div(a.val, b.val)); }
Value operator-(const Value& a) { return dispatch1(Op::neg, a, 0.0, 0.0, pv_neg(a.val)); }

Value operator+(const Value& a, double k) { return affine(a, 1.0, k); }
Value operator+(double k, const Value& a) { return affine(a, 1.0, k); }
Value operator-(const Value& a, double k) { return affine(a, 1.0, -k); }
Value operator-(double k, const Value& a) { return affine(a, -1.0, k); }
Value operator*(const Value& a, double k) { return affine(a, k, 0.0); }
Value operator*(double k, const Value& a) { return affine(a, k, 0.0); }
Value operator/(const Value& a, double k) { return affine(a, 1.0 / k, 0.0); }
Value operator/(double k, const Value& a) { return Value(PathVector(k)) / a; }

Value affine(const Value& a, double m, double c) {
    return dispatch1(Op::affine, a, m, c, pv_affine(a.val, m, c));
}

Value pow_c(const Value& a, double k) { return dispatch1(Op::pow_k, a, k, 0.0, pv_pow(a.val, k)); }
Value exp_v(const Value& a) { return dispatch1(Op::exp_e, a, 0.0, 0.0, pv_exp(a.val)); }
Value log_v(const Value& a) { return dispatch1(Op::log_e, a, 0.0, 0.0, pv_log(a.val)); }
Value min_c(const Value& a, double k) { return dispatch1(Op::min_k, a, k, 0.0, pv_min(a.val, k)); }
Value max_c(const Value& a, double k) { return dispatch1(Op::max_k, a, k, 0.0, pv_max(a.val, k)); }
Value step_ge(const Value& a, double k) {
    return dispatch1(Op::step_ge, a, k, 0.0, pv_step_ge(a.val, k));
}

Value fma_v(const Value& a, const Value& b, const Value& c) {
    return dispatch3(Op::mul_add, a, b, c, pv_muladd(a.val, b.val, c.val));
}

Value expect(const Value& a) {
    return dispatch1(Op::expect, a, 0.0, 0.0, PathVector(pv_mean(a.val)));
}

Value lincomb(const std::vector<Value>& xs, const std::vector<PathVector>& ws) {
    if (xs.size() != ws.size()) throw std::invalid_argument("lincomb: terms/weights mismatch");
    // Single accumulation pass; no per-term temporaries.
    bool all_scalar = true;
    std::size_t n = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (!xs[j].val.is_scalar()) {
            all_scalar = false;
            n = xs[j].val.size();
        }
        if (!ws[j].is_scalar()) {
            all_scalar = false;
            n = ws[j].size();
        }
    }
    PathVector out;
    if (all_scalar) {
        double s = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j) s += ws[j].scalar() * xs[j].val.scalar();
        out = PathVector(s);
    } else {
        std::vector<double> buf(n, 0.0);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const PathVector& x = xs[j].val;
            const PathVector& w = ws[j];
            for (std::size_t i = 0; i < n; ++i) buf[i] += w.at(i) * x.at(i);
        }
        out = PathVector(std::move(buf));
    }

    Tape* t = nullptr;
    for (const Value& x : xs)
        if (x.recorded()) {
            if (t && t != x.tape) throw std::logic_error("lincomb: operands on different tapes");
            t = x.tape;
        }
    if (t) return t->record_lincomb(xs, ws, std::move(out));
    return Value(std::move(out));
}

}  // namespace sdice
