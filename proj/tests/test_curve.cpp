#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpverify/curve.hpp"
#include "cpverify/sampling.hpp"

using namespace cpv;

TEST_CASE("model parameters") {
    const ModelParams mp = ModelParams::make(3, 0.8);
    CHECK(std::abs(mp.k * mp.k + mp.kprime * mp.kprime - 1.0) < 1e-15);
    cplx wn = 1.0;
    for (int i = 0; i < mp.n; ++i) wn *= mp.omega;
    CHECK(std::abs(wn - 1.0) < 1e-14);
    CHECK(std::abs(mp.q * mp.q - mp.omega) < 1e-14);
    CHECK_THROWS_AS(ModelParams::make(1, 0.5), DomainError);

    // k' > 1 puts k on the imaginary axis
    const ModelParams dual = ModelParams::make(3, 1.25);
    CHECK(std::abs(dual.k.real()) < 1e-15);
    CHECK(dual.k.imag() != 0.0);
}

TEST_CASE("chart at k' = 1 degenerates to the clock parameterisation") {
    const ModelParams mp = ModelParams::make(3, 1.0);
    const cplx u{0.7, 0.0};
    const CurvePoint p = make_point_from_chart(mp, u);
    CHECK(std::abs(p.chart()->phi) < 1e-14);
    CHECK(std::abs(p.chart()->phibar) < 1e-14);
    CHECK(std::abs(p.x() - std::exp(iu * u / 3.0)) < 1e-14);
    CHECK(std::abs(p.y() - std::exp(iu * (u + pi) / 3.0)) < 1e-14);
    CHECK(std::abs(p.mu() - 1.0) < 1e-14);
}

TEST_CASE("self-dual scaling limit of sin(phi)") {
    // u = -i log k + pi/2 + u' with u' = 0: sin(phi) -> -1/2 as k' -> 1
    const double k = 1e-5;
    const ModelParams mp = ModelParams::make(3, std::sqrt(1.0 - k * k));
    const cplx u = -iu * std::log(cplx(k)) + pi / 2;
    const CurvePoint p = make_point_from_chart(mp, u);
    // complex asin carries ~1e-8 noise this deep into the scaling region
    CHECK(std::abs(std::sin(p.chart()->phi) + 0.5) < 2e-7);
    CHECK(std::abs(std::sin(p.chart()->phibar) + 0.5) < 1e-5);
}

TEST_CASE("chart point satisfies the curve, N=2 k'=0.8") {
    const ModelParams mp = ModelParams::make(2, 0.8);
    const CurvePoint p = make_point_from_chart(mp, 0.3);
    const auto [r1, r2] = curve_residuals(mp, p.x(), p.y(), p.mu());
    CHECK(r1 < 1e-12);
    CHECK(r2 < 1e-12);
}

TEST_CASE("xyz constructor accepts and rejects") {
    const ModelParams mp = ModelParams::make(4, 1.0);
    // k = 0: x = 1, y = e^{i pi/N}, mu = 1 satisfies x^N + y^N = 0
    CHECK_NOTHROW(make_point_xyz(mp, 1.0, std::exp(iu * pi / 4.0), 1.0));
    CHECK_THROWS_AS(make_point_xyz(mp, 0.0, 0.0, 0.0), CurveViolation);
    try {
        make_point_xyz(mp, 0.0, 0.0, 0.0);
    } catch (const CurveViolation& e) {
        CHECK(e.mu_residual == doctest::Approx(1.0));  // |0 - k'| = 1
    }
}

TEST_CASE("chart round-trip through the xyz validator") {
    PointSampler smp(31);
    for (double kp : {0.5, 0.9, 1.0, 1.3}) {
        const ModelParams mp = ModelParams::make(3, kp);
        for (int i = 0; i < 100; ++i) {
            const CurvePoint p = smp.point(mp);
            CHECK_NOTHROW(make_point_xyz(mp, p.x(), p.y(), p.mu()));
        }
    }
}

TEST_CASE("explicit chart values constructor") {
    const ModelParams mp = ModelParams::make(3, 0.8);
    const CurvePoint p = make_point_from_chart(mp, cplx{0.4, 0.1});
    const auto c = *p.chart();
    const CurvePoint q = make_point_from_chart_values(mp, c.u, c.phi, c.phibar);
    CHECK(std::abs(p.x() - q.x()) < 1e-14);
    CHECK_THROWS_AS(make_point_from_chart_values(mp, 0.4, 0.3, 0.0), DomainError);
}

TEST_CASE("crossing conjugation") {
    const ModelParams mp = ModelParams::make(5, 1.0);
    const CurvePoint p = fz_point(mp, 0.45);
    const CurvePoint pc = crossing_conjugate(p);
    CHECK(std::abs(pc.x() - p.y() / mp.omega) < 1e-14);
    CHECK(std::abs(pc.y() - p.x()) < 1e-14);
    CHECK(std::abs(pc.mu() - 1.0 / p.mu()) < 1e-14);

    // double conjugation: (x, y, mu) -> (x/w, y/w, mu)
    const CurvePoint pcc = crossing_conjugate(pc);
    CHECK(std::abs(pcc.x() - p.x() / mp.omega) < 1e-13);
    CHECK(std::abs(pcc.y() - p.y() / mp.omega) < 1e-13);
    CHECK(std::abs(pcc.mu() - p.mu()) < 1e-13);

    // conjugates of generic points stay on the curve (validated inside)
    PointSampler smp(7);
    const ModelParams mp2 = ModelParams::make(3, 0.7);
    for (int i = 0; i < 20; ++i) CHECK_NOTHROW(crossing_conjugate(smp.point(mp2)));
}

TEST_CASE("chart rejects the singular k' = 0 line") {
    const ModelParams mp = ModelParams::make(3, 0.0);
    CHECK_THROWS_AS(make_point_from_chart(mp, 0.3), DomainError);
}

TEST_CASE("reflected arcsin branch still lands on the curve") {
    const ModelParams mp = ModelParams::make(3, 0.8);
    const CurvePoint p = make_point_from_chart(mp, cplx{0.4, 0.1}, 1);
    const auto [r1, r2] = curve_residuals(mp, p.x(), p.y(), p.mu());
    CHECK(r1 < 1e-12);
    CHECK(r2 < 1e-12);
    // different branch, different point
    const CurvePoint q = make_point_from_chart(mp, cplx{0.4, 0.1}, 0);
    CHECK(std::abs(p.x() - q.x()) > 1e-3);
}
