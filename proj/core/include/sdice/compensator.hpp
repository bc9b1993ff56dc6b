#pragma once

// Damage compensator: a contingent booking rule that scales damage costs once
// they cross a threshold fraction of the chosen normalizer.
//
// With damage ratio x(t) = C_D(t)/normalizer(t), the booked damage cost is
//     C_D * (1 + (multiplier - 1) * gate(x)),
// where gate is the hard indicator 1{x >= threshold} (default) or, optionally,
// a smoothstep ramp over [threshold - ramp_width, threshold] that restores a
// usable gradient for smooth optimizers. The hard gate contributes no
// derivative (consistent with an indicator almost everywhere).

#include "sdice/tape.hpp"

namespace sdice {

struct CompensatorConfig {
    bool enabled = false;
    double threshold = 0.03;   // trigger level of the damage ratio
    double multiplier = 10.0;  // booking scale once triggered
    enum class Normalizer { gross_output, numeraire } normalizer = Normalizer::gross_output;
    bool smooth_ramp = false;   // replace the step with a smoothstep shoulder
    double ramp_width = 0.0025; // shoulder width in damage-ratio units
    bool affects_output = true; // false: booked cost is diagnostic only
    void validate() const;
};

// Booking multiplier 1 + (multiplier-1)*gate(x) for a damage-ratio ensemble.
Value compensator_multiplier(const CompensatorConfig& cfg, const Value& x);

}  // namespace sdice
