#pragma once

#include "cpverify/common.hpp"
#include "cpverify/curve.hpp"

namespace cpv {

// Real modulus k in [0,1), complementary k', the complete integrals K, K'
// and the nome p = exp(-pi K'/K).
struct EllipticContext {
    double k = 0, kprime = 1, K = pi / 2, Kp = 0, p = 0;

    static EllipticContext from_modulus(double k);
    static EllipticContext from_nome(double p);
};

// Complete elliptic integral of the first kind via the arithmetic-geometric
// mean; absolute accuracy ~1e-14 for k in [0,1).
double complete_K(double k);

// k(p) = theta2(0,p)^2 / theta3(0,p)^2
double modulus_from_nome(double p);

// Jacobi theta functions of argument z with nome p.  Series terms are added
// until they drop below 1e-16 in magnitude, hard cap 64 terms.
cplx theta1(cplx z, double p);
cplx theta2(cplx z, double p);
cplx theta3(cplx z, double p);
cplx theta4(cplx z, double p);

// Baxter's H, H1, Theta, Theta1 at argument beta: H(beta) = theta1(pi beta/(2K), p), etc.
struct ThetaBlock {
    cplx H, H1, Th, Th1;
};
ThetaBlock theta_baxter(cplx beta, const EllipticContext& ctx);

// Two-term small-p forms of the same four functions under the critical
// scaling beta = (K/pi)(i/2 log p + 2 beta'); exact in beta', truncated at
// O(p^{3/2}).
ThetaBlock theta_baxter_leading(cplx beta_prime, double p);

// beta = (K/pi)(i/2 log p + 2 beta')
cplx scaled_beta(cplx beta_prime, const EllipticContext& ctx);

struct Jacobi3 {
    cplx sn, cn, dn;
};
// sn/cn/dn from theta quotients; complex argument supported.
Jacobi3 jacobi_sn_cn_dn(cplx beta, const EllipticContext& ctx);

// The N = 2 spectral point x = -sqrt(k) sn(beta), y = -sqrt(k) cn/dn,
// mu = sqrt(k')/dn; validates the curve conditions and records beta.
class EllipticChart {
public:
    static CurvePoint point(const ModelParams& mp, const EllipticContext& ctx, cplx beta);
};

// scd(u) = sn(u/2) / (cn(u/2) dn(u/2))
cplx scd(cplx u, const EllipticContext& ctx);

}  // namespace cpv
