#include "cpverify/curve.hpp"

#include <cmath>

namespace cpv {

ModelParams ModelParams::make(int n, double kprime, double tol) {
    if (n < 2) throw DomainError("ModelParams: need N >= 2");
    if (kprime < 0) throw DomainError("ModelParams: need k' >= 0");
    ModelParams mp;
    mp.n = n;
    mp.kprime = kprime;
    mp.k = std::sqrt(cplx(1.0 - kprime * kprime, 0.0));
    mp.omega = std::exp(2.0 * pi * iu / double(n));
    mp.q = -std::exp(pi * iu / double(n));
    mp.tol = tol;
    return mp;
}

static cplx cpow_int(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

std::pair<double, double> curve_residuals(const ModelParams& mp, cplx x, cplx y, cplx mu) {
    const cplx xn = cpow_int(x, mp.n);
    const cplx yn = cpow_int(y, mp.n);
    const cplx mun = cpow_int(mu, mp.n);
    const double r1 = std::abs(xn + yn - mp.k * (1.0 + xn * yn)) / (1.0 + std::abs(xn * yn));
    const double r2 = std::abs(mun * (1.0 - mp.k * xn) - mp.kprime);
    return {r1, r2};
}

cplx CurvePoint::sqrt_x() const { return std::sqrt(x_); }
cplx CurvePoint::sqrt_y() const { return std::sqrt(y_); }

CurvePoint make_point_xyz(const ModelParams& mp, cplx x, cplx y, cplx mu) {
    const auto [r1, r2] = curve_residuals(mp, x, y, mu);
    if (r1 > mp.tol || r2 > mp.tol)
        throw CurveViolation("make_point_xyz: triple violates the curve conditions", r1, r2);
    CurvePoint p;
    p.params_ = mp;
    p.x_ = x;
    p.y_ = y;
    p.mu_ = mu;
    return p;
}

CurvePoint make_point_from_chart(const ModelParams& mp, cplx u, int branch) {
    if (mp.kprime == 0.0) throw DomainError("make_point_from_chart: k' = 0 makes the phibar relation singular");
    const double n = mp.n;
    cplx phi = std::asin(-mp.k * std::sin(u));
    if (branch == 1) phi = pi - phi;

    const cplx sin_phibar = -(iu * mp.k / mp.kprime) * std::cos(u);
    cplx phibar = std::asin(sin_phibar);
    const double scale = std::max(1.0, std::abs(std::cos(phi)));
    if (std::abs(mp.kprime * std::cos(phibar) - std::cos(phi)) > mp.tol * scale) {
        phibar = pi - phibar;
        if (std::abs(mp.kprime * std::cos(phibar) - std::cos(phi)) > mp.tol * scale)
            throw DomainError("make_point_from_chart: no phibar branch satisfies k' cos(phibar) = cos(phi)");
    }

    const cplx x = std::exp(iu * (u + phi) / n);
    const cplx y = std::exp(iu * (u - phi + pi) / n);
    const cplx mu = std::exp(iu * (phibar - phi) / n);

    const auto [r1, r2] = curve_residuals(mp, x, y, mu);
    if (r1 > mp.tol || r2 > mp.tol)
        throw CurveViolation("make_point_from_chart: constructed point violates the curve", r1, r2);

    CurvePoint p;
    p.params_ = mp;
    p.x_ = x;
    p.y_ = y;
    p.mu_ = mu;
    p.chart_ = ChartValues{u, phi, phibar};
    return p;
}

CurvePoint make_point_from_chart_values(const ModelParams& mp, cplx u, cplx phi, cplx phibar) {
    const double scale = std::max({1.0, std::abs(std::sin(phi)), std::abs(std::cos(phi))});
    if (std::abs(std::sin(phi) + mp.k * std::sin(u)) > mp.tol * scale ||
        std::abs(mp.kprime * std::cos(phibar) - std::cos(phi)) > mp.tol * scale)
        throw DomainError("make_point_from_chart_values: chart relations violated");
    const double n = mp.n;
    const cplx x = std::exp(iu * (u + phi) / n);
    const cplx y = std::exp(iu * (u - phi + pi) / n);
    const cplx mu = std::exp(iu * (phibar - phi) / n);
    CurvePoint p = make_point_xyz(mp, x, y, mu);
    p.chart_ = ChartValues{u, phi, phibar};
    return p;
}

CurvePoint fz_point(const ModelParams& mp, cplx u) {
    if (mp.kprime != 1.0) throw DomainError("fz_point: requires k' = 1");
    return make_point_from_chart(mp, u);
}

CurvePoint crossing_conjugate(const CurvePoint& r) {
    if (r.mu() == cplx{}) throw DivisionByZero("crossing_conjugate: mu = 0");
    const ModelParams& mp = r.params();
    return make_point_xyz(mp, r.y() / mp.omega, r.x(), 1.0 / r.mu());
}

}  // namespace cpv
