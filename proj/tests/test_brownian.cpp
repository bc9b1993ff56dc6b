#include <doctest.h>

#include <cmath>

#include "sdice/brownian.hpp"
#include "sdice/time_grid.hpp"

using namespace sdice;

TEST_CASE("increments are a pure function of (seed, path, step)") {
    TimeGrid grid = TimeGrid::uniform(2015.0, 10.0, 1.0);
    BrownianDriver d1(grid, 64, 42), d2(grid, 64, 42), d3(grid, 64, 43);

    // Query out of order; stateless hashing must not care.
    PathVector a7 = d1.increments(7);
    PathVector a0 = d1.increments(0);
    PathVector b0 = d2.increments(0);
    PathVector b7 = d2.increments(7);

    CHECK(pv_equal_bits(a0, b0));
    CHECK(pv_equal_bits(a7, b7));
    CHECK(!pv_equal_bits(a0, d3.increments(0)));

    // Same normals, repeated query.
    CHECK(pv_equal_bits(d1.normals(3), d1.normals(3)));
}

TEST_CASE("increments scale with sqrt(dt)") {
    TimeGrid g5 = TimeGrid::uniform(2015.0, 25.0, 5.0);
    BrownianDriver d(g5, 16, 7);
    PathVector z = d.normals(2);
    PathVector dw = d.increments(2);
    for (std::size_t p = 0; p < 16; ++p)
        CHECK(dw.at(p) == doctest::Approx(std::sqrt(5.0) * z.at(p)));
}

TEST_CASE("hash-derived normals have standard-normal statistics") {
    TimeGrid grid = TimeGrid::uniform(2015.0, 2.0, 1.0);
    const std::size_t n = 200000;
    BrownianDriver d(grid, n, 20260815);
    PathVector z = d.normals(0);

    const double mean = pv_mean(z);
    double m2 = 0.0, below = 0.0, tail = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double x = z.at(p);
        m2 += x * x;
        if (x < 0.0) below += 1.0;
        if (std::abs(x) > 1.959964) tail += 1.0;
    }
    m2 /= static_cast<double>(n);
    below /= static_cast<double>(n);
    tail /= static_cast<double>(n);

    const double se_mean = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean) < 4.0 * se_mean);
    CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
    CHECK(std::abs(below - 0.5) < 4.0 * 0.5 * se_mean);
    CHECK(std::abs(tail - 0.05) < 4.0 * std::sqrt(0.05 * 0.95) * se_mean);
}

TEST_CASE("normals decorrelate across steps and paths") {
    TimeGrid grid = TimeGrid::uniform(2015.0, 3.0, 1.0);
    const std::size_t n = 100000;
    BrownianDriver d(grid, n, 99);
    PathVector z0 = d.normals(0), z1 = d.normals(1);
    double cross = 0.0;
    for (std::size_t p = 0; p < n; ++p) cross += z0.at(p) * z1.at(p);
    cross /= static_cast<double>(n);
    CHECK(std::abs(cross) < 4.0 / std::sqrt(static_cast<double>(n)));
}
