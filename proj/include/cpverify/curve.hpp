#pragma once

#include <optional>
#include <utility>

#include "cpverify/common.hpp"

namespace cpv {

// Global model data: number of clock states N, temperature-like parameter k',
// k = sqrt(1 - k'^2) (purely imaginary above the dual point k' = 1),
// omega = exp(2 pi i/N) and q = -exp(i pi/N), so q^2 = omega.
struct ModelParams {
    int n = 2;
    double kprime = 1.0;
    cplx k;
    cplx omega;
    cplx q;
    double tol = 1e-10;

    static ModelParams make(int n, double kprime, double tol = 1e-10);
};

struct ChartValues {
    cplx u, phi, phibar;
};

// A spectral parameter (x, y, mu) satisfying
//   x^N + y^N = k (1 + x^N y^N),   mu^N (1 - k x^N) = k'.
// Immutable after construction; optionally carries the (u, phi, phibar)
// chart and, for N = 2, the elliptic argument beta it was built from.
class CurvePoint {
public:
    CurvePoint() = default;

    const ModelParams& params() const { return params_; }
    cplx x() const { return x_; }
    cplx y() const { return y_; }
    cplx mu() const { return mu_; }
    const std::optional<ChartValues>& chart() const { return chart_; }
    const std::optional<cplx>& beta() const { return beta_; }

    // Principal half-values used to fix a coherent sign for c0 across
    // representation pairs.
    cplx sqrt_x() const;
    cplx sqrt_y() const;

    friend CurvePoint make_point_xyz(const ModelParams&, cplx, cplx, cplx);
    friend CurvePoint make_point_from_chart(const ModelParams&, cplx, int);
    friend CurvePoint make_point_from_chart_values(const ModelParams&, cplx, cplx, cplx);
    friend class EllipticChart;

private:
    ModelParams params_;
    cplx x_, y_, mu_;
    std::optional<ChartValues> chart_;
    std::optional<cplx> beta_;
};

// Residuals of the two defining relations, normalized as
//   |x^N + y^N - k(1 + x^N y^N)| / (1 + |x^N y^N|)   and   |mu^N (1 - k x^N) - k'|.
std::pair<double, double> curve_residuals(const ModelParams& mp, cplx x, cplx y, cplx mu);

// Validates and stores a raw triple; throws CurveViolation when off-curve.
CurvePoint make_point_xyz(const ModelParams& mp, cplx x, cplx y, cplx mu);

// Builds the point x = e^{i(u+phi)/N}, y = e^{i(u-phi+pi)/N}, mu = e^{i(phibar-phi)/N}
// with sin phi = -k sin u and k' cos phibar = cos phi.  branch = 0 takes the
// principal arcsin for phi, branch = 1 the reflected solution pi - arcsin.
// The phibar branch is always fixed by the third relation.
CurvePoint make_point_from_chart(const ModelParams& mp, cplx u, int branch = 0);

// Builds the point from explicit chart values, validating all three chart
// relations as well as the curve conditions.
CurvePoint make_point_from_chart_values(const ModelParams& mp, cplx u, cplx phi, cplx phibar);

// k' = 1 (k = 0) family: x = e^{iu/N}, y = e^{i(u+pi)/N}, mu = 1.
CurvePoint fz_point(const ModelParams& mp, cplx u);

// (x, y, mu) -> (omega^{-1} y, x, 1/mu); stays on the curve.
CurvePoint crossing_conjugate(const CurvePoint& r);

}  // namespace cpv
