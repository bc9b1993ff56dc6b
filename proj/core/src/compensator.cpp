#include "sdice/compensator.hpp"

#include <stdexcept>

namespace sdice {

void CompensatorConfig::validate() const {
    if (!(threshold > 0.0)) throw std::invalid_argument("compensator: threshold must be positive");
    if (!(multiplier >= 1.0)) throw std::invalid_argument("compensator: multiplier must be >= 1");
    if (smooth_ramp && !(ramp_width > 0.0))
        throw std::invalid_argument("compensator: ramp_width must be positive with smooth_ramp");
    if (smooth_ramp && ramp_width >= threshold)
        throw std::invalid_argument("compensator: ramp_width must be below threshold");
}

Value compensator_multiplier(const CompensatorConfig& cfg, const Value& x) {
    const double span = cfg.multiplier - 1.0;
    if (!cfg.smooth_ramp) {
        Value gate = step_ge(x, cfg.threshold);
        return affine(gate, span, 1.0);
    }
    // Smoothstep shoulder: y ramps 0->1 over [threshold - w, threshold],
    // gate = y^2 (3 - 2 y). Fully saturated at and above the threshold.
    const double w = cfg.ramp_width;
    Value y = affine(x, 1.0 / w, -(cfg.threshold - w) / w);
    y = min_c(max_c(y, 0.0), 1.0);
    Value gate = (y * y) * affine(y, -2.0, 3.0);
    return affine(gate, span, 1.0);
}

}  // namespace sdice
