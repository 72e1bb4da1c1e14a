#include "cpverify/elliptic.hpp"

#include <cmath>
#include <limits>

namespace cpv {

double complete_K(double k) {
    if (k < 0 || k >= 1) throw DomainError("complete_K: need 0 <= k < 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-17 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return pi / (2.0 * a);
}

EllipticContext EllipticContext::from_modulus(double k) {
    if (k < 0 || k >= 1) throw DomainError("EllipticContext: need 0 <= k < 1");
    EllipticContext c;
    c.k = k;
    c.kprime = std::sqrt(1.0 - k * k);
    c.K = complete_K(k);
    if (k == 0.0) {
        c.Kp = std::numeric_limits<double>::infinity();
        c.p = 0.0;
    } else {
        c.Kp = complete_K(c.kprime);
        c.p = std::exp(-pi * c.Kp / c.K);
    }
    return c;
}

EllipticContext EllipticContext::from_nome(double p) {
    if (p < 0 || p >= 1) throw DomainError("EllipticContext: need 0 <= nome < 1");
    EllipticContext c = from_modulus(modulus_from_nome(p));
    c.p = p;  // keep the requested nome exactly; the K'/K round trip drifts at rounding level
    return c;
}

static constexpr int kThetaCap = 64;
static constexpr double kThetaEps = 1e-16;

// Odd-theta sums without the 2 p^{1/4} prefactor; the prefactor cancels in
// every quotient used below and keeping it out makes p -> 0 regular.
static cplx theta1_reduced(cplx z, double p) {
    cplx s = 0;
    double sign = 1.0;
    for (int m = 0; m < kThetaCap; ++m) {
        const cplx term = sign * std::pow(p, double(m) * (m + 1)) * std::sin(double(2 * m + 1) * z);
        s += term;
        if (m > 0 && std::abs(term) < kThetaEps * (1.0 + std::abs(s))) break;
        sign = -sign;
    }
    return s;
}

static cplx theta2_reduced(cplx z, double p) {
    cplx s = 0;
    for (int m = 0; m < kThetaCap; ++m) {
        const cplx term = std::pow(p, double(m) * (m + 1)) * std::cos(double(2 * m + 1) * z);
        s += term;
        if (m > 0 && std::abs(term) < kThetaEps * (1.0 + std::abs(s))) break;
    }
    return s;
}

static void check_nome(double p) {
    if (!(p >= 0) || p >= 1) throw DomainError("theta series: need 0 <= nome < 1");
}

cplx theta1(cplx z, double p) {
    check_nome(p);
    return 2.0 * std::pow(p, 0.25) * theta1_reduced(z, p);
}

cplx theta2(cplx z, double p) {
    check_nome(p);
    return 2.0 * std::pow(p, 0.25) * theta2_reduced(z, p);
}

cplx theta3(cplx z, double p) {
    check_nome(p);
    cplx s = 1.0;
    for (int m = 1; m < kThetaCap; ++m) {
        const cplx term = 2.0 * std::pow(p, double(m) * m) * std::cos(2.0 * m * z);
        s += term;
        if (std::abs(term) < kThetaEps * (1.0 + std::abs(s))) break;
    }
    return s;
}

cplx theta4(cplx z, double p) {
    check_nome(p);
    cplx s = 1.0;
    double sign = -1.0;
    for (int m = 1; m < kThetaCap; ++m) {
        const cplx term = sign * 2.0 * std::pow(p, double(m) * m) * std::cos(2.0 * m * z);
        s += term;
        if (std::abs(term) < kThetaEps * (1.0 + std::abs(s))) break;
        sign = -sign;
    }
    return s;
}

double modulus_from_nome(double p) {
    check_nome(p);
    const cplx r = theta2_reduced(cplx{}, p) / theta3(cplx{}, p);
    return 4.0 * std::sqrt(p) * (r * r).real();
}

ThetaBlock theta_baxter(cplx beta, const EllipticContext& ctx) {
    const cplx z = pi * beta / (2.0 * ctx.K);
    return {theta1(z, ctx.p), theta2(z, ctx.p), theta4(z, ctx.p), theta3(z, ctx.p)};
}

ThetaBlock theta_baxter_leading(cplx beta_prime, double p) {
    const double sp = std::sqrt(p);
    const cplx ep = std::exp(iu * beta_prime);
    const cplx em = std::exp(-iu * beta_prime);
    ThetaBlock b;
    b.H = -iu * ep + iu * em * sp;
    b.H1 = ep + em * sp;
    b.Th = 1.0 - ep * ep * sp;
    b.Th1 = 1.0 + ep * ep * sp;
    return b;
}

cplx scaled_beta(cplx beta_prime, const EllipticContext& ctx) {
    if (ctx.p <= 0.0) throw DomainError("scaled_beta: requires a positive nome");
    return ctx.K / pi * (0.5 * iu * std::log(ctx.p) + 2.0 * beta_prime);
}

Jacobi3 jacobi_sn_cn_dn(cplx beta, const EllipticContext& ctx) {
    const double p = ctx.p;
    check_nome(p);
    const cplx z = pi * beta / (2.0 * ctx.K);
    const cplx s1 = theta1_reduced(z, p), s2 = theta2_reduced(z, p);
    const cplx t3 = theta3(z, p), t4 = theta4(z, p);
    const cplx s20 = theta2_reduced(cplx{}, p);
    const cplx t30 = theta3(cplx{}, p), t40 = theta4(cplx{}, p);
    Jacobi3 j;
    j.sn = (t30 / s20) * (s1 / t4);
    j.cn = (t40 / s20) * (s2 / t4);
    j.dn = (t40 / t30) * (t3 / t4);
    return j;
}

CurvePoint EllipticChart::point(const ModelParams& mp, const EllipticContext& ctx, cplx beta) {
    if (mp.n != 2) throw DomainError("EllipticChart: the sn/cn/dn parameterisation is the N = 2 chart");
    if (std::abs(mp.kprime - ctx.kprime) > 1e-12)
        throw DomainError("EllipticChart: ModelParams and EllipticContext disagree on k'");
    const auto j = jacobi_sn_cn_dn(beta, ctx);
    const double sk = std::sqrt(ctx.k);
    const double skp = std::sqrt(ctx.kprime);
    const cplx x = -sk * j.sn;
    const cplx y = -sk * j.cn / j.dn;
    const cplx mu = skp / j.dn;
    CurvePoint p = make_point_xyz(mp, x, y, mu);
    p.beta_ = beta;
    return p;
}

cplx scd(cplx u, const EllipticContext& ctx) {
    const auto j = jacobi_sn_cn_dn(0.5 * u, ctx);
    return j.sn / (j.cn * j.dn);
}

}  // namespace cpv
