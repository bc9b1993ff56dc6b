#include "sdice/brownian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdice {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

// Uniform in (0, 1): top 53 bits plus half an ulp so 0 is unreachable.
double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t step) {
    // Chain the three coordinates through the mixer; the +1/+2 offsets decouple
    // the two uniforms feeding Box-Muller.
    const std::uint64_t base = splitmix64(seed + splitmix64(path + splitmix64(step)));
    const double u1 = to_unit(splitmix64(base + 1));
    const double u2 = to_unit(splitmix64(base + 2));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BrownianDriver::BrownianDriver(const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed)
    : grid_(grid), n_paths_(n_paths), seed_(seed) {
    if (n_paths_ == 0) throw std::invalid_argument("BrownianDriver: need at least one path");
}

PathVector BrownianDriver::normals(std::size_t step) const {
    if (step >= grid_.steps()) throw std::out_of_range("BrownianDriver: step outside grid");
    std::vector<double> z(n_paths_);
    for (std::size_t p = 0; p < n_paths_; ++p) z[p] = counter_normal(seed_, p, step);
    return PathVector(std::move(z));
}

PathVector BrownianDriver::increments(std::size_t step) const {
    if (step >= grid_.steps()) throw std::out_of_range("BrownianDriver: step outside grid");
    const double sd = std::sqrt(grid_.dt(step));
    std::vector<double> dw(n_paths_);
    for (std::size_t p = 0; p < n_paths_; ++p) dw[p] = sd * counter_normal(seed_, p, step);
    return PathVector(std::move(dw));
}

}  // namespace sdice
