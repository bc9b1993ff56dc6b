#pragma once

// Counter-based Brownian increment factory.
//
// Each increment dW(path, step) is derived statelessly from (seed, path, step)
// via an integer hash, so the ensemble is reproducible bit-for-bit for a given
// seed regardless of evaluation order, thread count, or how many times a step
// is queried. One increment per path per step; normals via Box-Muller from two
// hash-derived uniforms.

#include <cstdint>
#include <vector>

#include "sdice/path_vector.hpp"
#include "sdice/time_grid.hpp"

namespace sdice {

// SplitMix64 finalizer-style hash step (Steele, Lea & Flood's generator).
std::uint64_t splitmix64(std::uint64_t x);

// Standard normal derived from (seed, path, step); deterministic and stateless.
double counter_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

class BrownianDriver {
  public:
    BrownianDriver(const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed);

    std::size_t n_paths() const { return n_paths_; }
    std::uint64_t seed() const { return seed_; }

    // dW over [t_i, t_i+1] for every path: sqrt(dt_i) * z(path, i).
    // n_paths == 1 still yields an expanded 1-entry ensemble (a random draw is
    // never a broadcast constant).
    PathVector increments(std::size_t step) const;

    // Raw standard normals for step i (no sqrt(dt) scaling).
    PathVector normals(std::size_t step) const;

  private:
    TimeGrid grid_;
    std::size_t n_paths_;
    std::uint64_t seed_;
};

}  // namespace sdice
