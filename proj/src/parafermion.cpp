#include "cpverify/parafermion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cpv {

double conformal_spin(int n) { return 1.0 - 1.0 / double(n); }

int x_power(TailVariant v) {
    switch (v) {
        case TailVariant::ebar0:
        case TailVariant::e1:
        case TailVariant::bare: return 1;
        case TailVariant::e0:
        case TailVariant::ebar1: return -1;
    }
    throw DomainError("x_power: bad variant");
}

double variant_spin(TailVariant v, int n) {
    const double s = conformal_spin(n);
    switch (v) {
        case TailVariant::ebar0:
        case TailVariant::ebar1: return s;
        case TailVariant::e0:
        case TailVariant::e1: return -s;
        case TailVariant::bare: return 0.0;
    }
    throw DomainError("variant_spin: bad variant");
}

double edge_alpha(const DiamondLattice& lat, const MidEdge& r) {
    return std::arg(lat.position(r.sigma) - lat.position(r.mu));
}

TailSpec canonical_tail(const DiamondLattice& lat, TailVariant v, const MidEdge& r) {
    if (!lat.is_spin(r.sigma) || !lat.is_dual(r.mu))
        throw DomainError("canonical_tail: mid-edge needs a spin site and a dual site");
    const int di = std::abs(r.sigma.i - r.mu.i), dj = std::abs(r.sigma.j - r.mu.j);
    if (di + dj != 1) throw DomainError("canonical_tail: sites not adjacent");
    // All tails share the anchor (1,0) and climb a staircase hugging the
    // left/bottom boundary to the target's diagonal row, then run rightward
    // into r_mu.  A common anchor is what makes tails to different rows
    // mutually consistent: two such routes to the same endpoint differ by
    // closed loops around freely summed spins only, so every plaquette sees
    // the local tail configuration of its four-term identity.
    TailSpec t;
    t.variant = v;
    const int h = r.mu.j - r.mu.i;
    GridPt p{1, 0};
    t.path.push_back(p);
    while (p.j - p.i < h) {  // ascend: (1,j) -> (0,j+1) -> (1,j+2) -> ...
        p = p.i == 1 ? GridPt{0, p.j + 1} : GridPt{1, p.j + 1};
        if (!lat.in_grid(p)) throw DomainError("canonical_tail: row above the lattice");
        t.path.push_back(p);
    }
    while (p.j - p.i > h) {  // descend along the bottom: (i,0) -> (i+1,1) -> (i+2,0)
        p = p.j == 0 ? GridPt{p.i + 1, 1} : GridPt{p.i + 1, 0};
        if (!lat.in_grid(p)) throw DomainError("canonical_tail: row below the lattice");
        t.path.push_back(p);
    }
    while (!(p == r.mu)) {
        p = GridPt{p.i + 1, p.j + 1};
        if (!lat.in_grid(p)) throw DomainError("canonical_tail: target beyond the right edge");
        t.path.push_back(p);
    }
    return t;
}

InsertionSet current_insertion(const DiamondLattice& lat, TailVariant v, const MidEdge& r,
                               bool compensate) {
    InsertionSet ins;
    ins.x_powers.push_back({r.sigma, x_power(v)});
    ins.tails.push_back(canonical_tail(lat, v, r));
    if (compensate) ins.x_powers.push_back({lat.top_corner_spin(), -x_power(v)});
    return ins;
}

cplx current_expectation(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                         TailVariant v, const MidEdge& r, Engine e, bool compensate) {
    return expectation(lat, tables, current_insertion(lat, v, r, compensate), e);
}

PlaquetteStencil make_plaquette(const DiamondLattice& lat, int ci, int cj) {
    if (ci < 0 || ci >= lat.cols() || cj < 0 || cj >= lat.rows())
        throw DomainError("make_plaquette: cell outside the lattice");
    PlaquetteStencil p;
    p.ci = ci;
    p.cj = cj;
    const GridPt c00{ci, cj}, c10{ci + 1, cj}, c11{ci + 1, cj + 1}, c01{ci, cj + 1};
    if (mod(ci + cj, 2) == 0) {
        p.kind = EdgeKind::W;  // spins left/right, duals bottom/top
        p.redge = {MidEdge{c00, c01}, MidEdge{c00, c10}, MidEdge{c11, c10}, MidEdge{c11, c01}};
    } else {
        p.kind = EdgeKind::Wbar;  // duals left/right, spins bottom/top
        p.redge = {MidEdge{c01, c00}, MidEdge{c10, c00}, MidEdge{c10, c11}, MidEdge{c01, c11}};
    }
    // counterclockwise corner walk: c00 -> c10 -> c11 -> c01 -> c00 passes
    // the mid-edges in the order r2, r3, r4, r1
    const cplx z00 = lat.position(c00), z10 = lat.position(c10), z11 = lat.position(c11),
               z01 = lat.position(c01);
    p.dz = {z00 - z01, z10 - z00, z11 - z10, z01 - z11};
    for (int j = 0; j < 4; ++j) p.alpha[j] = edge_alpha(lat, p.redge[j]);
    return p;
}

std::array<cplx, 4> dh_phase_coefficients(TailVariant v, EdgeKind kind, const CurvePoint& r,
                                          const CurvePoint& s) {
    if (!r.chart() || !s.chart())
        throw DomainError("dh_phase_coefficients: points must carry the (u, phi, phibar) chart");
    const double n = r.params().n;
    // sign of the leading phi_r exponent per variant and plaquette type
    double sg = 0;
    switch (v) {
        case TailVariant::ebar0: sg = kind == EdgeKind::W ? +1 : -1; break;
        case TailVariant::ebar1: sg = kind == EdgeKind::W ? -1 : +1; break;
        case TailVariant::e0: sg = kind == EdgeKind::W ? -1 : +1; break;
        case TailVariant::e1: sg = kind == EdgeKind::W ? +1 : -1; break;
        case TailVariant::bare: throw DomainError("dh_phase_coefficients: bare current has none");
    }
    const cplx pr = r.chart()->phi, ps = s.chart()->phi;
    return {std::exp(iu * sg * pr / n), std::exp(iu * sg * ps / n), std::exp(-iu * sg * pr / n),
            std::exp(-iu * sg * ps / n)};
}

DhReport dh_residual(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                     TailVariant v, const PlaquetteStencil& plq, Engine e) {
    const WeightTable& wt = tables.at(0);
    const int n = wt.n();
    const double spin = variant_spin(v, n);
    const bool anti = v == TailVariant::e0 || v == TailVariant::e1;

    DhReport rep;
    rep.coeff = dh_phase_coefficients(v, plq.kind, wt.r(), wt.s());
    const cplx z0 = partition_sum(build_system(lat, tables), e);
    if (std::abs(z0) < 1e-280) throw DegeneratePartition("dh_residual: Z = 0");
    for (int j = 0; j < 4; ++j) {
        const cplx num =
            partition_sum(build_system(lat, tables, current_insertion(lat, v, plq.redge[j])), e);
        rep.current[j] = num / z0;
        rep.dressed[j] = std::exp(-iu * spin * plq.alpha[j]) * rep.current[j];
        const cplx dz = anti ? std::conj(plq.dz[j]) : plq.dz[j];
        rep.residual += rep.coeff[j] * dz * rep.dressed[j];
        rep.scale = std::max(rep.scale, std::abs(dz * rep.dressed[j]));
    }
    return rep;
}

ContourReport dh_contour(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                         TailVariant v, const std::vector<std::pair<int, int>>& cells, Engine e) {
    if (cells.empty()) throw DomainError("dh_contour: empty region");
    // simple connectivity check: the cells are edge-connected and the
    // complement within a padded bounding box is connected to the border
    {
        std::set<std::pair<int, int>> region(cells.begin(), cells.end());
        if (region.size() != cells.size()) throw DomainError("dh_contour: duplicate cells");
        std::vector<std::pair<int, int>> stack = {cells[0]};
        std::set<std::pair<int, int>> seen = {cells[0]};
        auto nb = [](std::pair<int, int> c) {
            return std::array<std::pair<int, int>, 4>{
                std::pair{c.first + 1, c.second}, {c.first - 1, c.second},
                {c.first, c.second + 1},          {c.first, c.second - 1}};
        };
        while (!stack.empty()) {
            auto c = stack.back();
            stack.pop_back();
            for (auto m : nb(c))
                if (region.count(m) && !seen.count(m)) {
                    seen.insert(m);
                    stack.push_back(m);
                }
        }
        if (seen.size() != region.size()) throw DomainError("dh_contour: region not connected");
        int lo_i = cells[0].first, hi_i = lo_i, lo_j = cells[0].second, hi_j = lo_j;
        for (auto c : cells) {
            lo_i = std::min(lo_i, c.first);
            hi_i = std::max(hi_i, c.first);
            lo_j = std::min(lo_j, c.second);
            hi_j = std::max(hi_j, c.second);
        }
        std::set<std::pair<int, int>> outer_seen;
        std::vector<std::pair<int, int>> outer_stack;
        auto in_box = [&](std::pair<int, int> c) {
            return c.first >= lo_i - 1 && c.first <= hi_i + 1 && c.second >= lo_j - 1 &&
                   c.second <= hi_j + 1;
        };
        outer_stack.push_back({lo_i - 1, lo_j - 1});
        outer_seen.insert(outer_stack[0]);
        while (!outer_stack.empty()) {
            auto c = outer_stack.back();
            outer_stack.pop_back();
            for (auto m : nb(c))
                if (in_box(m) && !region.count(m) && !outer_seen.count(m)) {
                    outer_seen.insert(m);
                    outer_stack.push_back(m);
                }
        }
        long box = long(hi_i - lo_i + 3) * (hi_j - lo_j + 3);
        if (long(outer_seen.size()) + long(region.size()) != box)
            throw DomainError("dh_contour: region not simply connected");
    }

    const WeightTable& wt = tables.at(0);
    const int n = wt.n();
    const double spin = variant_spin(v, n);
    const bool anti = v == TailVariant::e0 || v == TailVariant::e1;

    // accumulate per-mid-edge coefficients; interior contributions cancel
    auto key = [](const MidEdge& m) {
        return std::array<int, 4>{m.sigma.i, m.sigma.j, m.mu.i, m.mu.j};
    };
    std::map<std::array<int, 4>, std::pair<MidEdge, cplx>> accum;
    ContourReport rep;

    const cplx z0 = partition_sum(build_system(lat, tables), e);
    if (std::abs(z0) < 1e-280) throw DegeneratePartition("dh_contour: Z = 0");
    auto dressed = [&](const MidEdge& m) {
        const cplx num = partition_sum(build_system(lat, tables, current_insertion(lat, v, m)), e);
        return std::exp(-iu * spin * edge_alpha(lat, m)) * (num / z0);
    };

    double coeff_scale = 0;
    for (auto [ci, cj] : cells) {
        const PlaquetteStencil plq = make_plaquette(lat, ci, cj);
        const auto coeff = dh_phase_coefficients(v, plq.kind, wt.r(), wt.s());
        cplx cell_sum = 0;
        for (int j = 0; j < 4; ++j) {
            const cplx dz = anti ? std::conj(plq.dz[j]) : plq.dz[j];
            const cplx c = coeff[j] * dz;
            coeff_scale = std::max(coeff_scale, std::abs(c));
            auto& slot = accum[key(plq.redge[j])];
            slot.first = plq.redge[j];
            slot.second += c;
            cell_sum += c * dressed(plq.redge[j]);
        }
        rep.plaquette_sum += cell_sum;
    }

    for (const auto& [k, slot] : accum) {
        if (std::abs(slot.second) < 1e-13 * coeff_scale) {
            rep.interior_coeff = std::max(rep.interior_coeff, std::abs(slot.second));
            continue;  // interior mid-edge: coefficients cancelled exactly
        }
        const cplx o = dressed(slot.first);
        rep.boundary_sum += slot.second * o;
        rep.scale = std::max(rep.scale, std::abs(slot.second * o));
    }
    return rep;
}

NearFzPoints near_fz_points(int n, double theta, double phi_plus, double phi_minus) {
    NearFzPoints out;
    if (phi_plus == 0.0 && phi_minus == 0.0) {
        out.mp = ModelParams::make(n, 1.0);
        const double u_s = 0.6;  // any real chart value; FZ weights depend on u_s - u_r only
        out.s = fz_point(out.mp, u_s);
        out.r = fz_point(out.mp, u_s - theta);
        return out;
    }
    if (phi_plus == 0.0 || phi_minus == 0.0)
        throw DomainError("near_fz_points: k' = 1 with nonzero phi is off the curve; need both "
                          "phi+ and phi- nonzero");
    const double phi_s = phi_plus + phi_minus;
    const double phibar_s = phi_plus - phi_minus;
    const double kprime = std::cos(phi_s) / std::cos(phibar_s);
    out.mp = ModelParams::make(n, kprime);
    const cplx k = out.mp.k;
    // sin u = -sin(phi)/k and cos u = i k' sin(phibar)/k solve the chart
    // relations exactly
    const cplx eiu = (iu * kprime * std::sin(cplx(phibar_s)) - iu * std::sin(cplx(phi_s))) / k;
    const cplx u_s = -iu * std::log(eiu);
    out.s = make_point_from_chart_values(out.mp, u_s, phi_s, phibar_s);
    out.r = make_point_from_chart(out.mp, u_s - theta);
    return out;
}

NearFzReport near_fz_defect(int n, double theta, double phi_plus, double phi_minus, int cols,
                            int rows, Engine e) {
    const NearFzPoints pts = near_fz_points(n, theta, phi_plus, phi_minus);
    const DiamondLattice lat(cols, rows, theta);
    const std::vector<WeightTable> tables = {WeightTable(pts.r, pts.s)};
    // central W plaquette
    int ci = cols / 2, cj = rows / 2;
    if (mod(ci + cj, 2) != 0) ++ci;
    const PlaquetteStencil plq = make_plaquette(lat, ci, cj);

    const double s = conformal_spin(n);
    const cplx z0 = partition_sum(build_system(lat, tables), e);
    std::array<cplx, 4> cur{};
    for (int j = 0; j < 4; ++j) {
        cur[j] = partition_sum(
                     build_system(lat, tables, current_insertion(lat, TailVariant::ebar0, plq.redge[j])),
                     e) /
                 z0;
    }
    auto dressed = [&](double spin_val, int j) {
        return std::exp(-iu * spin_val * plq.alpha[j]) * cur[j];
    };

    const cplx t = -iu * std::exp(iu * theta);
    const cplx ap = std::exp(iu * theta / 2.0) * cplx(phi_plus) / double(n);
    const cplx am = std::exp(-iu * theta / 2.0) * cplx(phi_minus) / double(n);
    const std::array<cplx, 4> b_t = {t, 1.0 / t, t, 1.0 / t};
    const std::array<cplx, 4> b_ti = {1.0 / t, t, 1.0 / t, t};

    NearFzReport rep;
    rep.asymptotic = std::abs(phi_plus) <= 0.1 && std::abs(phi_minus) <= 0.1;
    cplx lhs = 0, rhs = 0;
    for (int j = 0; j < 4; ++j) {
        lhs += plq.dz[j] * dressed(s, j);
        rep.scale = std::max(rep.scale, std::abs(plq.dz[j] * dressed(s, j)));
        // quadratic brackets carry the 1/2 of the exponential's second-order
        // term; without it the remainder is only second order in phi
        rhs += -ap * b_t[j] * dressed(s, j) + am * b_ti[j] * dressed(s - 2.0, j) +
               0.5 * iu * ap * ap * b_t[j] * dressed(s - 1.0, j) -
               0.5 * iu * am * am * b_ti[j] * dressed(s - 1.0, j);
    }
    rep.defect = lhs - rhs;
    for (int br = 0; br < 4; ++br) {
        const auto& pat = (br == 0 || br == 2) ? b_t : b_ti;
        rep.bracket_sums[br] = pat[0] + pat[1] + pat[2] + pat[3];
    }
    return rep;
}

IsingDiracReport ising_dirac_check(const EllipticContext& ctx, double beta_prime_r,
                                   double beta_prime_s, int cols, int rows, Engine e) {
    const ModelParams mp = ModelParams::make(2, ctx.kprime);
    const cplx beta_r = scaled_beta(beta_prime_r, ctx);
    const cplx beta_s = scaled_beta(beta_prime_s, ctx);
    const CurvePoint r = EllipticChart::point(mp, ctx, beta_r);
    const CurvePoint s = EllipticChart::point(mp, ctx, beta_s);
    const double theta = 2.0 * (beta_prime_s - beta_prime_r);  // = pi (beta_s - beta_r)/K

    const DiamondLattice lat(cols, rows, theta);
    const std::vector<WeightTable> tables = {WeightTable(r, s)};
    int ci = cols / 2, cj = rows / 2;
    if (mod(ci + cj, 2) != 0) ++ci;
    const PlaquetteStencil plq = make_plaquette(lat, ci, cj);

    // bare currents: Z-string tail plus X at the spin site
    const cplx z0 = partition_sum(build_system(lat, tables), e);
    std::array<cplx, 4> J{};
    for (int j = 0; j < 4; ++j)
        J[j] = partition_sum(
                   build_system(lat, tables, current_insertion(lat, TailVariant::bare, plq.redge[j])),
                   e) /
               z0;

    const ThetaBlock tr = theta_baxter(beta_r, ctx);
    const ThetaBlock ts = theta_baxter(beta_s, ctx);

    IsingDiracReport rep;
    {
        const std::array<cplx, 4> c1 = {tr.Th1 * ts.H, ts.Th1 * tr.H, tr.Th * ts.H1, -ts.Th * tr.H1};
        const std::array<cplx, 4> c2 = {tr.Th * ts.H1, ts.Th * tr.H1, -tr.Th1 * ts.H, ts.Th1 * tr.H};
        cplx r1 = 0, r2 = 0;
        double s1 = 0, s2 = 0;
        for (int j = 0; j < 4; ++j) {
            r1 += c1[j] * J[j];
            r2 += c2[j] * J[j];
            s1 = std::max(s1, std::abs(c1[j] * J[j]));
            s2 = std::max(s2, std::abs(c2[j] * J[j]));
        }
        rep.bare1 = std::abs(r1) / std::max(s1, 1e-300);
        rep.bare2 = std::abs(r2) / std::max(s2, 1e-300);
    }

    const double p = ctx.p;
    const cplx t = -iu * std::exp(iu * theta);
    std::array<cplx, 4> psi{}, psibar{};
    for (int j = 0; j < 4; ++j) {
        psi[j] = std::exp(-iu * plq.alpha[j] / 2.0) * J[j];
        psibar[j] = std::exp(+iu * plq.alpha[j] / 2.0) * J[j];
    }
    const std::array<cplx, 4> pat = {1.0 / t, t, 1.0 / t, t};
    const std::array<cplx, 4> pat_conj = {t, 1.0 / t, t, 1.0 / t};
    for (int j = 0; j < 4; ++j) {
        rep.dpsi += plq.dz[j] * psi[j];
        rep.mass_rhs += -iu * p * pat[j] * psibar[j];
        rep.dpsibar += std::conj(plq.dz[j]) * psibar[j];
        rep.mass_rhs_conj += iu * p * pat_conj[j] * psi[j];
        rep.psi_scale = std::max(rep.psi_scale, std::abs(plq.dz[j] * psi[j]));
        rep.psibar_scale = std::max(rep.psibar_scale, std::abs(plq.dz[j] * psibar[j]));
    }
    rep.coeff_sum = -iu * p * (pat[0] + pat[1] + pat[2] + pat[3]);
    {
        cplx bracket = 0;
        for (int j = 0; j < 4; ++j) bracket += pat[j] * psibar[j];
        rep.mass = 4.0 * rep.dpsi / (-iu * bracket);
    }

    // p^{1/2} cancellation in the combination (bare1) - i (bare2): the
    // combined coefficients minus their p -> 0 limits must be O(p)
    {
        const ThetaBlock tr0 = theta_baxter_leading(beta_prime_r, 0.0);
        const ThetaBlock ts0 = theta_baxter_leading(beta_prime_s, 0.0);
        const std::array<cplx, 4> w = {
            tr.Th1 * ts.H - iu * tr.Th * ts.H1, ts.Th1 * tr.H - iu * ts.Th * tr.H1,
            tr.Th * ts.H1 + iu * tr.Th1 * ts.H, -ts.Th * tr.H1 - iu * ts.Th1 * tr.H};
        const std::array<cplx, 4> w0 = {
            tr0.Th1 * ts0.H - iu * tr0.Th * ts0.H1, ts0.Th1 * tr0.H - iu * ts0.Th * tr0.H1,
            tr0.Th * ts0.H1 + iu * tr0.Th1 * ts0.H, -ts0.Th * tr0.H1 - iu * ts0.Th1 * tr0.H};
        for (int j = 0; j < 4; ++j)
            rep.sqrtp_defect = std::max(rep.sqrtp_defect, std::abs(w[j] - w0[j]) / std::sqrt(p));
    }
    return rep;
}

}  // namespace cpv
