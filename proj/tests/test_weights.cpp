#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpverify/elliptic.hpp"
#include "cpverify/sampling.hpp"
#include "cpverify/weights.hpp"

using namespace cpv;

// direct product evaluation of the weight tables, independent of the ratio
// recursion used by the implementation
static cplx w_product(const CurvePoint& r, const CurvePoint& s, int a) {
    const cplx omega = r.params().omega;
    cplx acc = std::pow(r.mu() / s.mu(), a);
    cplx wl = 1.0;
    for (int l = 1; l <= a; ++l) {
        wl *= omega;
        acc *= (s.y() - r.x() * wl) / (r.y() - s.x() * wl);
    }
    return acc;
}

static cplx wbar_product(const CurvePoint& r, const CurvePoint& s, int a) {
    const cplx omega = r.params().omega;
    cplx acc = std::pow(r.mu() * s.mu(), a);
    cplx wl = 1.0;
    for (int l = 1; l <= a; ++l) {
        wl *= omega;
        acc *= (r.x() * omega - s.x() * wl) / (s.y() - r.y() * wl);
    }
    return acc;
}

TEST_CASE("weight normalization and degenerate pair") {
    const ModelParams mp = ModelParams::make(4, 0.7);
    const CurvePoint r = make_point_from_chart(mp, 0.3);
    const CurvePoint s = make_point_from_chart(mp, 0.9);
    const WeightTable t(r, s);
    CHECK(t.w(0) == cplx{1.0, 0.0});
    CHECK(t.wbar(0) == cplx{1.0, 0.0});
    CHECK(t.periodicity_defect() < 1e-12);

    const WeightTable same(r, r);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(same.w(a) - 1.0) < 1e-14);
    // Wbar_ss is the Kronecker delta
    CHECK(std::abs(same.wbar(0) - 1.0) < 1e-14);
    for (int a = 1; a < 4; ++a) CHECK(std::abs(same.wbar(a)) < 1e-14);
}

TEST_CASE("recursion-built table equals the direct product formula") {
    const ModelParams mp = ModelParams::make(3, 1.0);
    const CurvePoint r = fz_point(mp, 0.2);
    const CurvePoint s = fz_point(mp, 0.9);
    const WeightTable t(r, s);
    for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(t.w(a) - w_product(r, s, a)) < 1e-13);
        CHECK(std::abs(t.wbar(a) - wbar_product(r, s, a)) < 1e-13);
    }
}

TEST_CASE("crossing symmetry") {
    PointSampler smp(11);
    {
        const ModelParams mp = ModelParams::make(2, 0.8);
        const auto rep = check_crossing(smp.point(mp), smp.point(mp));
        CHECK(rep.max_dev() < 1e-11);
    }
    {
        const ModelParams mp = ModelParams::make(5, 1.0);
        const auto rep = check_crossing(smp.point(mp), smp.point(mp));
        CHECK(rep.max_dev() < 1e-11);
    }
}

TEST_CASE("star-triangle relation") {
    PointSampler smp(23);
    {
        const ModelParams mp = ModelParams::make(2, 0.75);
        const auto st = check_star_triangle(smp.point(mp), smp.point(mp), smp.point(mp));
        CHECK(st.max_rel_dev < 1e-10);
    }
    {
        const ModelParams mp = ModelParams::make(3, 1.0);
        const auto st =
            check_star_triangle(fz_point(mp, 0.2), fz_point(mp, 0.7), fz_point(mp, 1.3));
        CHECK(st.max_rel_dev < 1e-10);
    }
}

TEST_CASE("star-triangle is invariant under a global spin shift") {
    // both sides depend on spin differences only; shifting (a,b,c) -> (a+1,b+1,c+1)
    // reproduces the same set of values
    const ModelParams mp = ModelParams::make(3, 0.8);
    const CurvePoint r = make_point_from_chart(mp, 0.1);
    const CurvePoint s = make_point_from_chart(mp, 0.8);
    const CurvePoint t = make_point_from_chart(mp, 1.4);
    const WeightTable rs(r, s), rt(r, t), st(s, t);
    auto lhs = [&](int a, int b, int c) {
        cplx acc = 0;
        for (int d = 0; d < 3; ++d) acc += rs.wbar(a - d) * rt.w(d - b) * st.wbar(d - c);
        return acc;
    };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(lhs(a, b, c) - lhs(a + 1, b + 1, c + 1)) < 1e-13);
}

TEST_CASE("ising couplings") {
    const EllipticContext ctx = EllipticContext::from_modulus(0.6);
    const ModelParams mp = ModelParams::make(2, ctx.kprime);
    const CurvePoint r = EllipticChart::point(mp, ctx, 0.21);
    const CurvePoint s = EllipticChart::point(mp, ctx, 0.74);
    const auto [k1, k2] = ising_couplings(r, s, ctx);
    CHECK(std::sinh(2 * k1) * std::sinh(2 * k2) == doctest::Approx(1.0 / ctx.kprime).epsilon(1e-10));

    // beta_s = beta_r freezes the vertical coupling
    CHECK_THROWS_AS(ising_couplings(r, r, ctx), SingularWeight);

    // k' -> 1, beta_s - beta_r = K/2: the self-dual-like point
    const EllipticContext flat = EllipticContext::from_modulus(1e-4);
    const ModelParams mp2 = ModelParams::make(2, flat.kprime);
    const CurvePoint a = EllipticChart::point(mp2, flat, 0.1);
    const CurvePoint b = EllipticChart::point(mp2, flat, 0.1 + flat.K / 2);
    const auto [j1, j2] = ising_couplings(a, b, flat);
    CHECK(std::sinh(2 * j1) * std::sinh(2 * j2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("disorder crossings") {
    const ModelParams mp = ModelParams::make(3, 1.0);
    const CurvePoint r = fz_point(mp, 0.2);
    const CurvePoint s = fz_point(mp, 1.0);
    const WeightTable t(r, s);

    // round trip is the identity for every variant and both edge kinds
    for (TailVariant v : {TailVariant::ebar0, TailVariant::e0, TailVariant::ebar1,
                          TailVariant::e1, TailVariant::bare}) {
        const auto up = disorder_cross(r, s, EdgeKind::W, CrossDir::up, v);
        const auto dn = disorder_cross(r, s, EdgeKind::W, CrossDir::down, v);
        CHECK(std::abs(up.factor * dn.factor - 1.0) < 1e-13);
        CHECK(up.shift + dn.shift == 0);
        const auto ri = disorder_cross(r, s, EdgeKind::Wbar, CrossDir::right, v);
        const auto le = disorder_cross(r, s, EdgeKind::Wbar, CrossDir::left, v);
        CHECK(std::abs(ri.factor * le.factor - 1.0) < 1e-13);
        CHECK(ri.shift + le.shift == 0);
    }

    // FZ point: f = y/(-q x mu) from the formula
    const cplx f_direct = r.y() / (-mp.q * r.x() * r.mu());
    CHECK(std::abs(disorder_f(r) - f_direct) < 1e-14);
    const auto ri = disorder_cross(r, s, EdgeKind::Wbar, CrossDir::right, TailVariant::ebar0);
    CHECK(std::abs(ri.factor - f_direct * disorder_f(s)) < 1e-14);

    // index wrap: a - b = N-1, shift +1 lands on W(0) = 1
    const auto upx = disorder_cross(r, s, EdgeKind::W, CrossDir::up, TailVariant::ebar0);
    CHECK(std::abs(disorder_modified_weight(t, EdgeKind::W, CrossDir::up, 2, 0,
                                            TailVariant::ebar0) -
                   upx.factor * t.w(0)) < 1e-14);

    // orientation misuse is rejected
    CHECK_THROWS_AS(disorder_cross(r, s, EdgeKind::W, CrossDir::left, TailVariant::ebar0),
                    DomainError);
    CHECK_THROWS_AS(disorder_cross(r, s, EdgeKind::Wbar, CrossDir::up, TailVariant::ebar0),
                    DomainError);

    // e-type tails swap f for 1/mu, index-1 tails reverse the arrow
    const auto e0r = disorder_cross(r, s, EdgeKind::Wbar, CrossDir::right, TailVariant::e0);
    CHECK(std::abs(e0r.factor - 1.0 / (r.mu() * s.mu())) < 1e-14);
    CHECK(e0r.shift == 1);
    const auto eb1r = disorder_cross(r, s, EdgeKind::Wbar, CrossDir::right, TailVariant::ebar1);
    CHECK(std::abs(eb1r.factor - 1.0 / (disorder_f(r) * disorder_f(s))) < 1e-14);
    CHECK(eb1r.shift == -1);
}

TEST_CASE("FZ weights carry the difference property") {
    const ModelParams mp = ModelParams::make(3, 1.0);
    const double shift = 0.37;
    const WeightTable t1(fz_point(mp, 0.2), fz_point(mp, 0.9));
    const WeightTable t2(fz_point(mp, 0.2 + shift), fz_point(mp, 0.9 + shift));
    for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(t1.w(a) - t2.w(a)) < 1e-12);
        CHECK(std::abs(t1.wbar(a) - t2.wbar(a)) < 1e-12);
    }
}

TEST_CASE("singular weights raise structured errors") {
    // y_r = x_s w^l for some l produces a vanishing denominator; build such a
    // pair directly on the k = 0 curve
    const ModelParams mp = ModelParams::make(3, 1.0);
    const CurvePoint r = fz_point(mp, 0.4);
    const cplx xs = r.y() / mp.omega;                       // y_r = x_s w
    const cplx ys = xs * std::exp(iu * pi / 3.0);           // keeps x^N + y^N = 0
    const CurvePoint s = make_point_xyz(mp, xs, ys, 1.0);
    CHECK_THROWS_AS(WeightTable(r, s), SingularWeight);
}
