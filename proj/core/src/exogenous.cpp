#include "sdice/exogenous.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace sdice {

namespace {

// Log-linear interpolation of a positive five-year-lattice series at t years.
double geo_interp(const std::vector<double>& lattice, double t) {
    const double cell = t / 5.0;
    std::size_t k = static_cast<std::size_t>(cell);
    if (k + 1 >= lattice.size()) return lattice.back();
    const double w = cell - static_cast<double>(k);
    if (w == 0.0) return lattice[k];
    return lattice[k] * std::pow(lattice[k + 1] / lattice[k], w);
}

}  // namespace

ExogenousPaths ExogenousPaths::build(const TimeGrid& grid, const DiceParams& p) {
    // Five-year lattice covering the horizon (one spare cell for interpolation).
    const std::size_t cells = static_cast<std::size_t>(std::ceil(grid.horizon() / 5.0)) + 2;
    std::vector<double> lat_pop(cells), lat_tfp(cells), lat_sig(cells);

    lat_pop[0] = p.pop0;
    lat_tfp[0] = p.a0;
    lat_sig[0] = p.sig0();
    for (std::size_t k = 0; k + 1 < cells; ++k) {
        const double t = 5.0 * static_cast<double>(k);  // years since start
        lat_pop[k + 1] = lat_pop[k] * std::pow(p.popasym / lat_pop[k], p.popadj);
        const double ga = p.ga0 * std::exp(-p.dela * t);  // TFP growth this period
        lat_tfp[k + 1] = lat_tfp[k] / (1.0 - ga);
        const double gsig = p.gsigma1 * std::pow(1.0 + p.dsig, t);  // per-year decline
        lat_sig[k + 1] = lat_sig[k] * std::exp(gsig * 5.0);
    }

    const std::size_t n = grid.nodes();
    ExogenousPaths exo;
    exo.pop.resize(n);
    exo.tfp.resize(n);
    exo.sigma.resize(n);
    exo.eland.resize(n);
    exo.forc_ex.resize(n);
    exo.pback.resize(n);
    exo.theta1.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.t(i);
        exo.pop[i] = geo_interp(lat_pop, t);
        exo.tfp[i] = geo_interp(lat_tfp, t);
        exo.sigma[i] = geo_interp(lat_sig, t);
        exo.eland[i] = p.eland0 * std::pow(1.0 - p.deland, t / 5.0);
        const double ramp = std::min(t / p.fex_ramp_years, 1.0);
        exo.forc_ex[i] = p.fex0 + (p.fex1 - p.fex0) * ramp;
        exo.pback[i] = p.pback * std::pow(1.0 - p.gback, t / 5.0);
        // Cost coefficient: backstop price converted into fraction-of-output
        // units (price in USD/tCO2, intensity in GtCO2 per trillion USD).
        exo.theta1[i] = exo.pback[i] * exo.sigma[i] / p.expcost2 / 1000.0;
    }
    return exo;
}

}  // namespace sdice
