#include "sdice/hull_white.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "sdice/hw_math.hpp"

namespace sdice {

HullWhiteParams HullWhiteParams::flat(const TimeGrid& grid, double a, double sigma, double r0,
                                      double theta) {
    HullWhiteParams p;
    p.r0 = r0;
    p.a.assign(grid.steps(), a);
    p.sigma.assign(grid.steps(), sigma);
    p.theta.assign(grid.steps(), theta);
    return p;
}

void HullWhiteParams::validate(const TimeGrid& grid) const {
    const std::size_t n = grid.steps();
    if (a.size() != n || sigma.size() != n || theta.size() != n)
        throw std::invalid_argument("HullWhiteParams: schedule length must equal grid steps");
    if (!std::isfinite(r0)) throw std::invalid_argument("HullWhiteParams: r0 must be finite");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(a[i] >= 0.0) || !std::isfinite(a[i]))
            throw std::invalid_argument("HullWhiteParams: mean reversion must be >= 0");
        if (!(sigma[i] >= 0.0) || !std::isfinite(sigma[i]))
            throw std::invalid_argument("HullWhiteParams: volatility must be >= 0");
        if (!std::isfinite(theta[i]))
            throw std::invalid_argument("HullWhiteParams: theta must be finite");
    }
}

HullWhiteModel::HullWhiteModel(TimeGrid grid, HullWhiteParams params)
    : grid_(std::move(grid)), params_(std::move(params)) {
    params_.validate(grid_);
    const std::size_t n = grid_.nodes();
    log_bond0_.resize(n);
    bond0_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const BondCoeffs c = bond_coeffs(0, j);
        log_bond0_[j] = c.a_term - c.b_term * params_.r0;
        bond0_[j] = std::exp(log_bond0_[j]);
    }
}

HullWhiteModel::BondCoeffs HullWhiteModel::bond_coeffs(std::size_t i, std::size_t j) const {
    if (j < i || j >= grid_.nodes())
        throw std::out_of_range("HullWhiteModel: bond indices outside grid");
    // ln P(t_i,t_j) = -B(t_i,t_j) rho_i - sum_k theta_k G_k + 1/2 sum_k sigma_k^2 H_k,
    // composed interval by interval from t_j down to t_i. c tracks B(t_{k+1}, t_j).
    double c = 0.0;
    double a_term = 0.0;
    for (std::size_t k = j; k-- > i;) {
        const double dt = grid_.dt(k);
        const double a = params_.a[k];
        const double bk = hw::b_factor(a, dt);
        const double gk = hw::int_b(a, dt) + bk * c;
        const double hk =
            hw::int_b2(a, dt) + 2.0 * c * hw::int_b_exp(a, dt) + c * c * hw::int_exp2(a, dt);
        a_term += -params_.theta[k] * gk + 0.5 * params_.sigma[k] * params_.sigma[k] * hk;
        c = bk + std::exp(-a * dt) * c;
    }
    return BondCoeffs{c, a_term};
}

double HullWhiteModel::ce_rate(std::size_t i) const {
    if (i >= grid_.steps()) throw std::out_of_range("HullWhiteModel: rate index outside grid");
    return -(log_bond0_[i + 1] - log_bond0_[i]) / grid_.dt(i);
}

HullWhiteParams HullWhiteModel::calibrate(const TimeGrid& grid, double a, double sigma, double r0,
                                          const std::vector<double>& target_log_discount) {
    const std::size_t n = grid.steps();
    if (target_log_discount.size() != n + 1)
        throw std::invalid_argument("calibrate: need one target log-discount per grid node");
    if (target_log_discount[0] != 0.0)
        throw std::invalid_argument("calibrate: target log-discount must vanish at t=0");

    HullWhiteParams p = HullWhiteParams::flat(grid, a, sigma, r0, 0.0);

    // The node-k curve condition is linear in (theta_0 .. theta_{k-1}) and each
    // new node introduces exactly one new unknown: forward substitution.
    for (std::size_t k = 1; k <= n; ++k) {
        double c = 0.0;           // B(t_{j+1}, t_k) during the sweep
        double g_last = 0.0;      // G coefficient of the new unknown theta_{k-1}
        double sum_known = 0.0;   // sum over already-solved theta_j G_j
        double sum_var = 0.0;     // sum over sigma_j^2 H_j
        for (std::size_t j = k; j-- > 0;) {
            const double dt = grid.dt(j);
            const double bj = hw::b_factor(a, dt);
            const double gj = hw::int_b(a, dt) + bj * c;
            const double hj =
                hw::int_b2(a, dt) + 2.0 * c * hw::int_b_exp(a, dt) + c * c * hw::int_exp2(a, dt);
            if (j == k - 1)
                g_last = gj;
            else
                sum_known += p.theta[j] * gj;
            sum_var += sigma * sigma * hj;
            c = bj + std::exp(-a * dt) * c;
        }
        // -ln P(0,t_k) = r0 B(0,t_k) + sum theta_j G_j - 1/2 sum sigma_j^2 H_j
        p.theta[k - 1] = (target_log_discount[k] - r0 * c - sum_known + 0.5 * sum_var) / g_last;
    }

    // Round-trip check: the implied certainty-equivalent forward rates must
    // reproduce the target's forward rates to round-off.
    HullWhiteModel check(grid, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target_fwd =
            (target_log_discount[i + 1] - target_log_discount[i]) / grid.dt(i);
        worst = std::max(worst, std::abs(check.ce_rate(i) - target_fwd));
    }
    if (worst > 1e-10)
        throw std::runtime_error("drift calibration residual " + std::to_string(worst) +
                                 " exceeds tolerance 1e-10");
    return p;
}

HullWhiteParams HullWhiteModel::calibrate_flat(const TimeGrid& grid, double a, double sigma,
                                               double target) {
    std::vector<double> L(grid.nodes());
    for (std::size_t i = 0; i < grid.nodes(); ++i) L[i] = target * grid.t(i);
    return calibrate(grid, a, sigma, target, L);
}

RateSystem HullWhiteModel::simulate(const BrownianDriver& driver) const {
    if (driver.n_paths() == 0) throw std::invalid_argument("simulate: empty ensemble");
    return simulate_impl(&driver, driver.n_paths());
}

RateSystem HullWhiteModel::simulate() const {
    for (double s : params_.sigma)
        if (s != 0.0)
            throw std::logic_error(
                "simulate(): deterministic evaluation requires sigma == 0; pass a BrownianDriver");
    return simulate_impl(nullptr, 1);
}

RateSystem HullWhiteModel::simulate_impl(const BrownianDriver* driver, std::size_t n_paths) const {
    RateSystem sys;
    sys.model_ = std::make_shared<HullWhiteModel>(*this);
    sys.n_paths = n_paths;
    const std::size_t nodes = grid_.nodes();
    sys.rho.resize(nodes);
    sys.discount.resize(nodes);
    sys.adjustment.assign(nodes, 1.0);

    PathVector rho(params_.r0);
    PathVector log_numeraire(0.0);
    sys.rho[0] = rho;
    sys.discount[0] = PathVector(1.0);

    for (std::size_t i = 0; i < grid_.steps(); ++i) {
        const double dt = grid_.dt(i);
        const double a = params_.a[i];
        const double sig = params_.sigma[i];
        const double th = params_.theta[i];

        const double b = hw::b_factor(a, dt);          // B(dt)
        const double phi = std::exp(-a * dt);          // e^-a dt
        const double ib = hw::int_b(a, dt);            // int B
        const double ib2 = hw::int_b2(a, dt);          // int B^2
        const double ibe = hw::int_b_exp(a, dt);       // int B e^-au
        const double ie2 = hw::int_exp2(a, dt);        // int e^-2au

        PathVector rho_next, integ;
        if (sig > 0.0) {
            const double sd_rho = sig * std::sqrt(ie2);      // stdev of rho_{i+1}
            const double k_spanned = ibe / ie2 * sd_rho;     // Cov/Var * sd_rho
            // Residual (unspanned) variance of the integrated rate.
            const double w = sig * sig * (ib2 - ibe * ibe / ie2);
            const PathVector z = driver->normals(i);
            rho_next = pv_muladd(pv_affine(rho, phi, th * b), z, sd_rho);
            integ = pv_muladd(pv_affine(rho, b, th * ib - 0.5 * w), z, k_spanned);
        } else {
            rho_next = pv_affine(rho, phi, th * b);
            integ = pv_affine(rho, b, th * ib);
        }

        log_numeraire = pv_add(log_numeraire, integ);
        rho = rho_next;
        sys.rho[i + 1] = rho;

        const PathVector raw = pv_exp(pv_neg(log_numeraire));
        double adj = 1.0;
        if (params_.adjust_discounts) adj = bond0_[i + 1] / pv_mean(raw);
        sys.adjustment[i + 1] = adj;
        sys.discount[i + 1] = adj == 1.0 ? raw : pv_affine(raw, adj, 0.0);
    }
    return sys;
}

PathVector RateSystem::zero_bond(std::size_t i, std::size_t j) const {
    const HullWhiteModel::BondCoeffs c = model_->bond_coeffs(i, j);
    return pv_exp(pv_affine(rho[i], -c.b_term, c.a_term));
}

PathVector RateSystem::forward_rate(std::size_t i, std::size_t j) const {
    if (j <= i) throw std::invalid_argument("forward_rate: need j > i");
    const HullWhiteModel::BondCoeffs c = model_->bond_coeffs(i, j);
    const double tau = model_->grid().t(j) - model_->grid().t(i);
    const PathVector inv_p = pv_exp(pv_affine(rho[i], c.b_term, -c.a_term));
    return pv_affine(inv_p, 1.0 / tau, -1.0 / tau);
}

}  // namespace sdice
