#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpverify/elliptic.hpp"

using namespace cpv;

TEST_CASE("complete elliptic integral") {
    CHECK(std::abs(complete_K(0.0) - pi / 2) < 1e-15);
    CHECK_THROWS_AS(complete_K(1.0), DomainError);
    CHECK_THROWS_AS(complete_K(-0.1), DomainError);

    // independent quadrature oracle at k = 0.5 (Simpson)
    const double k = 0.5;
    const int nq = 100001;
    double acc = 0;
    for (int i = 0; i < nq; ++i) {
        const double th = pi / 2 * i / (nq - 1);
        const double f = 1.0 / std::sqrt(1.0 - k * k * std::sin(th) * std::sin(th));
        acc += ((i == 0 || i == nq - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
    }
    acc *= (pi / 2) / (nq - 1) / 3.0;
    CHECK(std::abs(complete_K(k) - acc) < 1e-12);

    // K(k) - pi/2 = O(k^2): series coefficient pi/8
    for (double kk : {1e-3, 5e-4}) {
        const double d = complete_K(kk) - pi / 2;
        CHECK(d / (kk * kk) == doctest::Approx(pi / 8).epsilon(1e-4));
    }
}

TEST_CASE("jacobi functions: degenerate and special values") {
    const EllipticContext flat = EllipticContext::from_modulus(0.0);
    for (double b : {0.3, 1.1, -0.7}) {
        const auto j = jacobi_sn_cn_dn(b, flat);
        CHECK(std::abs(j.sn - std::sin(b)) < 1e-14);
        CHECK(std::abs(j.cn - std::cos(b)) < 1e-14);
        CHECK(std::abs(j.dn - 1.0) < 1e-14);
    }
    for (double k : {0.3, 0.8}) {
        const EllipticContext ctx = EllipticContext::from_modulus(k);
        const auto j = jacobi_sn_cn_dn(ctx.K, ctx);
        CHECK(std::abs(j.sn - 1.0) < 1e-12);  // sn K = 1
    }
}

TEST_CASE("sn/cn/dn identities on a complex grid") {
    double worst = 0;
    for (double k : {0.0, 0.1, 0.5, 0.9}) {
        const EllipticContext ctx = EllipticContext::from_modulus(k);
        for (int i = 0; i < 100; ++i) {
            const cplx beta{-1.5 + 3.0 * i / 99.0, 0.25 * std::sin(5.0 * i + 1.0)};
            const auto j = jacobi_sn_cn_dn(beta, ctx);
            worst = std::max(worst, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
            worst = std::max(worst, std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("nome, modulus and context consistency") {
    const EllipticContext ctx = EllipticContext::from_modulus(0.6);
    CHECK(std::abs(modulus_from_nome(ctx.p) - 0.6) < 1e-12);
    CHECK(std::abs(std::exp(-pi * ctx.Kp / ctx.K) - ctx.p) < 1e-14);
    // k ~ 4 p^{1/2} for small p
    const double p = 1e-10;
    CHECK(modulus_from_nome(p) / (4.0 * std::sqrt(p)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("theta functions match the critical-scaling expansions") {
    const double p = 1e-6;
    const EllipticContext ctx = EllipticContext::from_nome(p);
    const cplx bp = 0.4;
    const ThetaBlock full = theta_baxter(scaled_beta(bp, ctx), ctx);
    const ThetaBlock lead = theta_baxter_leading(bp, ctx.p);
    const double cap = 5.0 * std::pow(ctx.p, 1.5);
    CHECK(std::abs(full.H - lead.H) < cap);
    CHECK(std::abs(full.H1 - lead.H1) < cap);
    CHECK(std::abs(full.Th - lead.Th) < cap);
    CHECK(std::abs(full.Th1 - lead.Th1) < cap);

    // p -> 0 limits: Theta -> 1, Theta1 -> 1, H1 -> e^{i beta'}
    CHECK(std::abs(lead.Th - (1.0 - std::exp(2.0 * iu * bp) * std::sqrt(p))) < 1e-15);
    CHECK(std::abs(theta_baxter_leading(bp, 0.0).Th1 - 1.0) < 1e-15);
    CHECK(std::abs(theta_baxter_leading(bp, 0.0).H1 - std::exp(iu * bp)) < 1e-15);
}

TEST_CASE("e^{iu} from the elliptic chart approaches -e^{2i beta'}") {
    // the correction is p (e^{-2i beta'} - e^{6i beta'}), first order in the
    // nome; check the limit and the measured O(p) coefficient
    const double p = 1e-6;
    const EllipticContext ctx = EllipticContext::from_nome(p);
    const cplx bp = 0.3;
    const auto j = jacobi_sn_cn_dn(scaled_beta(bp, ctx), ctx);
    const cplx eiu = -iu * ctx.k * j.sn * j.cn / j.dn;
    CHECK(std::abs(eiu + std::exp(2.0 * iu * bp)) < 3.0 * p);
    const cplx coeff = (eiu + std::exp(2.0 * iu * bp)) / p;
    CHECK(std::abs(coeff - (std::exp(-2.0 * iu * bp) - std::exp(6.0 * iu * bp))) < 1e-2);
}

TEST_CASE("elliptic chart produces N = 2 curve points") {
    const EllipticContext ctx = EllipticContext::from_modulus(0.55);
    const ModelParams mp = ModelParams::make(2, ctx.kprime);
    const CurvePoint pt = EllipticChart::point(mp, ctx, 0.37);
    CHECK(pt.beta().has_value());
    const auto [r1, r2] = curve_residuals(mp, pt.x(), pt.y(), pt.mu());
    CHECK(r1 < 1e-12);
    CHECK(r2 < 1e-12);
    CHECK_THROWS_AS(EllipticChart::point(ModelParams::make(3, ctx.kprime), ctx, 0.37), DomainError);
}

TEST_CASE("theta series rejects bad nomes") {
    CHECK_THROWS_AS(theta1(cplx{0.1, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(EllipticContext::from_nome(-0.1), DomainError);
}
