#include "cpverify/weights.hpp"

#include <cmath>

namespace cpv {

static cplx w_ratio(const CurvePoint& r, const CurvePoint& s, const cplx& wl, int ell) {
    const cplx den = r.y() - s.x() * wl;
    if (std::abs(den) < 1e-13 * (std::abs(r.y()) + std::abs(s.x())))
        throw SingularWeight("W ratio: vanishing denominator y_r - x_s w^l", ell);
    return (r.mu() / s.mu()) * (s.y() - r.x() * wl) / den;
}

static cplx wbar_ratio(const CurvePoint& r, const CurvePoint& s, const cplx& wl, int ell) {
    const cplx den = s.y() - r.y() * wl;
    if (std::abs(den) < 1e-13 * (std::abs(s.y()) + std::abs(r.y())))
        throw SingularWeight("Wbar ratio: vanishing denominator y_s - y_r w^l", ell);
    return (r.mu() * s.mu()) * (r.x() * r.params().omega - s.x() * wl) / den;
}

WeightTable::WeightTable(const CurvePoint& r, const CurvePoint& s)
    : n_(r.params().n), w_(n_), wbar_(n_), r_(r), s_(s), has_points_(true) {
    const cplx omega = r.params().omega;
    w_[0] = wbar_[0] = 1.0;
    cplx wl = 1.0;
    for (int a = 1; a < n_; ++a) {
        wl *= omega;
        w_[a] = w_[a - 1] * w_ratio(r, s, wl, a);
        wbar_[a] = wbar_[a - 1] * wbar_ratio(r, s, wl, a);
    }
    // the curve conditions close the recursion after N steps; with
    // prod_l (a - b w^l) = a^N - b^N the closure reads
    //   (mu_r/mu_s)^N (y_s^N - x_r^N) = y_r^N - x_s^N
    //   (mu_r mu_s)^N (x_r^N - x_s^N) = y_s^N - y_r^N
    auto powN = [&](cplx z) {
        cplx acc = 1.0;
        for (int i = 0; i < n_; ++i) acc *= z;
        return acc;
    };
    const cplx xrn = powN(r.x()), xsn = powN(s.x()), yrn = powN(r.y()), ysn = powN(s.y());
    const cplx mrn = powN(r.mu()), msn = powN(s.mu());
    const double sc1 = std::abs(yrn) + std::abs(xsn) + 1e-30;
    const double sc2 = std::abs(ysn) + std::abs(yrn) + 1e-30;
    periodicity_defect_ = std::max(std::abs(mrn / msn * (ysn - xrn) - (yrn - xsn)) / sc1,
                                   std::abs(mrn * msn * (xrn - xsn) - (ysn - yrn)) / sc2);
}

WeightTable::WeightTable(int n, std::vector<cplx> w, std::vector<cplx> wbar)
    : n_(n), w_(std::move(w)), wbar_(std::move(wbar)) {
    if (int(w_.size()) != n_ || int(wbar_.size()) != n_)
        throw DomainError("WeightTable: raw tables must have length N");
}

WeightTable WeightTable::with_perturbed_w(int a, double factor) const {
    WeightTable t = *this;
    t.w_[mod(a, n_)] *= factor;
    return t;
}

WeightTable build_weights(const CurvePoint& r, const CurvePoint& s) { return WeightTable(r, s); }

CrossingReport check_crossing(const CurvePoint& r, const CurvePoint& s) {
    const WeightTable rs(r, s);
    const WeightTable ss_r(crossing_conjugate(s), r);
    CrossingReport rep;
    for (int a = 0; a < rs.n(); ++a) {
        rep.dev_w = std::max(rep.dev_w, std::abs(rs.w(a) - ss_r.wbar(a)));
        rep.dev_wbar = std::max(rep.dev_wbar, std::abs(rs.wbar(a) - ss_r.w(-a)));
    }
    return rep;
}

StarTriangleReport check_star_triangle(const CurvePoint& r, const CurvePoint& s, const CurvePoint& t) {
    const int n = r.params().n;
    const WeightTable rs(r, s), rt(r, t), st(s, t);

    auto lhs = [&](int a, int b, int c) {
        cplx acc = 0;
        for (int d = 0; d < n; ++d) acc += rs.wbar(a - d) * rt.w(d - b) * st.wbar(d - c);
        return acc;
    };
    auto rhs0 = [&](int a, int b, int c) { return rs.w(c - b) * rt.wbar(a - c) * st.w(a - b); };

    // anchor at (0,0,0); scan forward if the right side degenerates there
    cplx rho = 0;
    bool anchored = false;
    for (int a = 0; a < n && !anchored; ++a)
        for (int b = 0; b < n && !anchored; ++b)
            for (int c = 0; c < n && !anchored; ++c) {
                const cplx den = rhs0(a, b, c);
                if (std::abs(den) > 1e-100) {
                    rho = lhs(a, b, c) / den;
                    anchored = true;
                }
            }
    if (!anchored) throw DegeneratePartition("check_star_triangle: RHS vanishes at every spin triple");

    double max_rel = 0;
#pragma omp parallel for collapse(2) reduction(max : max_rel) schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const cplx den = rho * rhs0(a, b, c);
                const double dev = std::abs(lhs(a, b, c) - den);
                const double ref = std::max(std::abs(den), 1e-30);
                max_rel = std::max(max_rel, dev / ref);
            }
    return {rho, max_rel};
}

cplx disorder_f(const CurvePoint& r) {
    const cplx den = -r.params().q * r.x() * r.mu();
    if (std::abs(den) < 1e-150) throw DivisionByZero("disorder_f: x mu = 0");
    return r.y() / den;
}

static CrossDir reverse(CrossDir d) {
    switch (d) {
        case CrossDir::up: return CrossDir::down;
        case CrossDir::down: return CrossDir::up;
        case CrossDir::right: return CrossDir::left;
        case CrossDir::left: return CrossDir::right;
    }
    throw DomainError("reverse: bad direction");
}

CrossEffect disorder_cross(const CurvePoint& r, const CurvePoint& s, EdgeKind kind, CrossDir dir,
                           TailVariant v) {
    if (kind == EdgeKind::W && (dir == CrossDir::right || dir == CrossDir::left))
        throw DomainError("disorder_cross: W edges are crossed vertically");
    if (kind == EdgeKind::Wbar && (dir == CrossDir::up || dir == CrossDir::down))
        throw DomainError("disorder_cross: Wbar edges are crossed horizontally");

    if (v == TailVariant::ebar1 || v == TailVariant::e1) dir = reverse(dir);

    cplx cr, cs;
    switch (v) {
        case TailVariant::ebar0:
        case TailVariant::ebar1:
            cr = disorder_f(r);
            cs = disorder_f(s);
            break;
        case TailVariant::e0:
        case TailVariant::e1:
            cr = 1.0 / r.mu();
            cs = 1.0 / s.mu();
            break;
        case TailVariant::bare:
            cr = cs = 1.0;
            break;
    }

    switch (dir) {
        case CrossDir::up: return {cr / cs, +1};
        case CrossDir::down: return {cs / cr, -1};
        case CrossDir::right: return {cr * cs, +1};
        case CrossDir::left: return {1.0 / (cr * cs), -1};
    }
    throw DomainError("disorder_cross: bad direction");
}

cplx disorder_modified_weight(const WeightTable& t, EdgeKind kind, CrossDir dir, int a, int b,
                              TailVariant v) {
    if (!t.has_points()) throw DomainError("disorder_modified_weight: table carries no rapidity pair");
    const CrossEffect e = disorder_cross(t.r(), t.s(), kind, dir, v);
    return kind == EdgeKind::W ? e.factor * t.w(a - b + e.shift) : e.factor * t.wbar(a - b + e.shift);
}

std::pair<double, double> ising_couplings(const CurvePoint& r, const CurvePoint& s,
                                          const EllipticContext& ctx) {
    if (r.params().n != 2) throw DomainError("ising_couplings: N = 2 only");
    if (!r.beta() || !s.beta()) throw DomainError("ising_couplings: points must come from the elliptic chart");
    const cplx db = *s.beta() - *r.beta();
    const cplx arg1 = ctx.K - db;
    const cplx v1 = ctx.kprime * scd(arg1, ctx);
    const cplx v2 = ctx.kprime * scd(db, ctx);
    if (std::abs(v2) < 1e-150 || std::abs(v1) < 1e-150)
        throw SingularWeight("ising_couplings: scd vanishes (frozen coupling)", 0);
    const cplx k1 = -0.5 * std::log(v1);
    const cplx k2 = -0.5 * std::log(v2);
    return {k1.real(), k2.real()};
}

}  // namespace cpv
