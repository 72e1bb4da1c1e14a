#pragma once

#include <utility>
#include <vector>

#include "cpverify/curve.hpp"
#include "cpverify/elliptic.hpp"

namespace cpv {

// Boltzmann weight tables W_rs, Wbar_rs for one rapidity pair, normalized so
// W(0) = Wbar(0) = 1 and indexed mod N:
//   W(a)/W(a-1)    = (mu_r/mu_s) (y_s - x_r w^a)/(y_r - x_s w^a)
//   Wbar(a)/Wbar(a-1) = (mu_r mu_s) (x_r w - x_s w^a)/(y_s - y_r w^a)
class WeightTable {
public:
    WeightTable(const CurvePoint& r, const CurvePoint& s);
    WeightTable(int n, std::vector<cplx> w, std::vector<cplx> wbar);  // raw tables (tests, controls)

    int n() const { return n_; }
    cplx w(int a) const { return w_[mod(a, n_)]; }
    cplx wbar(int a) const { return wbar_[mod(a, n_)]; }

    bool has_points() const { return has_points_; }
    const CurvePoint& r() const { return r_; }
    const CurvePoint& s() const { return s_; }

    // wraparound defect |W(N)/W(0) - 1| of the ratio recursion (forced to
    // vanish by the curve conditions)
    double periodicity_defect() const { return periodicity_defect_; }

    // copy with W(a) scaled by `factor`; keeps the rapidity points (negative
    // controls: off-curve tables with intact disorder factors)
    WeightTable with_perturbed_w(int a, double factor) const;

private:
    int n_;
    std::vector<cplx> w_, wbar_;
    CurvePoint r_, s_;
    bool has_points_ = false;
    double periodicity_defect_ = 0;
};

WeightTable build_weights(const CurvePoint& r, const CurvePoint& s);

struct CrossingReport {
    double dev_w = 0;     // max_a |W_rs(a) - Wbar_{s* r}(a)|
    double dev_wbar = 0;  // max_a |Wbar_rs(a) - W_{s* r}(-a)|
    double max_dev() const { return dev_w > dev_wbar ? dev_w : dev_wbar; }
};
CrossingReport check_crossing(const CurvePoint& r, const CurvePoint& s);

struct StarTriangleReport {
    cplx rho;             // scalar extracted at the anchor spin triple
    double max_rel_dev;   // max over (a,b,c) of |LHS - rho RHS| / |rho RHS|
};
// sum_d Wbar_rs(a-d) W_rt(d-b) Wbar_st(d-c) = rho W_rs(c-b) Wbar_rt(a-c) W_st(a-b)
StarTriangleReport check_star_triangle(const CurvePoint& r, const CurvePoint& s, const CurvePoint& t);

// f_r = y_r / (-q x_r mu_r)
cplx disorder_f(const CurvePoint& r);

// Quasi-local tail flavours: ebar0/e0 carry the index-0 tail (arrow into the
// terminal dual site), ebar1/e1 the index-1 tail (arrow out of it); e-type
// tails replace f by 1/mu.  `bare` keeps the spin shifts with unit factors.
enum class TailVariant { ebar0, e0, ebar1, e1, bare };

enum class EdgeKind { W, Wbar };          // W horizontal (spin row), Wbar vertical
enum class CrossDir { up, down, right, left };

struct CrossEffect {
    cplx factor;
    int shift;  // added to the spin difference a - b inside the table
};

// Effect of one tail crossing on the weight of an edge with rapidity pair
// (r, s).  W edges are crossed vertically, Wbar edges horizontally:
//   (W, up): (f_r/f_s) W(a-b+1)        (W, down): (f_s/f_r) W(a-b-1)
//   (Wbar, right): f_r f_s Wbar(a-b+1) (Wbar, left): Wbar(a-b-1)/(f_r f_s)
CrossEffect disorder_cross(const CurvePoint& r, const CurvePoint& s, EdgeKind kind, CrossDir dir,
                           TailVariant v);

cplx disorder_modified_weight(const WeightTable& t, EdgeKind kind, CrossDir dir, int a, int b,
                              TailVariant v);

// N = 2 couplings exp(-2K1) = k' scd(K - beta_s + beta_r), exp(-2K2) = k' scd(beta_s - beta_r);
// they satisfy sinh(2K1) sinh(2K2) = 1/k'.
std::pair<double, double> ising_couplings(const CurvePoint& r, const CurvePoint& s,
                                          const EllipticContext& ctx);

}  // namespace cpv
