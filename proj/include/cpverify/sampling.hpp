#pragma once

#include <cstdint>
#include <random>

#include "cpverify/curve.hpp"

namespace cpv {

// Seeded sampler for reproducible sweeps.  Chart parameters are drawn
// uniformly from the box Re(u) in [-1.2, 1.2], Im(u) in [-0.35, 0.35] and
// projected onto the curve through the chart relations.
class PointSampler {
public:
    explicit PointSampler(uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        // 53 mantissa bits straight from the generator, independent of the
        // standard library's distribution implementation
        const double u01 = double(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u01;
    }

    cplx chart_u() { return {uniform(-1.2, 1.2), uniform(-0.35, 0.35)}; }

    CurvePoint point(const ModelParams& mp) { return make_point_from_chart(mp, chart_u()); }

    // k' values exercised by the generic sweeps: away from the dual point,
    // both below and above it
    double kprime_sample() {
        const double grid[] = {0.55, 0.7, 0.85, 0.95, 1.2};
        return grid[rng_() % 5];
    }

    std::mt19937_64& raw() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace cpv
