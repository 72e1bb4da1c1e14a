#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "cpverify/curve.hpp"
#include "cpverify/linalg.hpp"
#include "cpverify/weights.hpp"

namespace cpv {

enum class Gen {
    e0,
    e1,
    f0,
    f1,
    t0,
    t0i,
    t1,
    t1i,
    z0,
    z0i,
    z1,
    z1i,
    ebar0,  // t0 f0
    ebar1,  // t1 f1
    t0z0,
    t0z0i,
    t1z1,
    t1z1i,
};

const char* gen_name(Gen g);

// the ten generators swept by the intertwiner checks
extern const std::array<Gen, 10> kPrimaryGens;

// N-dimensional cyclic representation attached to a pair of curve points.
// c0 is taken as q sqrt(x) sqrt(x') / (sqrt(y) sqrt(y')) with per-point
// principal half-values, so that representations built on overlapping point
// pairs carry coherent signs; root_sign = -1 flips it.
class CyclicRep {
public:
    static CyclicRep build(const CurvePoint& r, const CurvePoint& rp, int root_sign = +1);

    const CurvePoint& r() const { return r_; }
    const CurvePoint& rp() const { return rp_; }
    cplx c0() const { return c0_; }
    int dim() const { return r_.params().n; }
    const CMat& mat(Gen g) const;

    static CMat clock(int n, cplx omega);  // X = diag(w^a)
    static CMat shift(int n);              // Z v_a = v_{a-1}

private:
    CurvePoint r_, rp_;
    cplx c0_;
    std::map<Gen, CMat> mats_;
};

// Delta(g) = g (x) right + left (x) g, or g (x) g for grouplike generators.
struct CoprodRule {
    bool grouplike;
    Gen left;
    std::optional<Gen> right;  // nullopt = identity
};
CoprodRule coproduct_rule(Gen g);

// Delta^{(L)}(g) with per-slot representations, built by the recursion
// Delta^{(m+1)} = (Delta (x) 1 ... (x) 1) Delta^{(m)}.
CMat coproduct_matrix(Gen g, const std::vector<const CyclicRep*>& slots);
CMat pair_coproduct(Gen g, const CyclicRep& a, const CyclicRep& b);

// S_rs (v_e1 (x) v_e2) = W_rs(e1 - e2) (v_e2 (x) v_e1)
CMat build_S(const CurvePoint& r, const CurvePoint& s);
// T_rs v_e = sum_a Wbar_rs(a) v_{e-a}
CMat build_T(const CurvePoint& r, const CurvePoint& s);

struct RMatrixCP {
    CurvePoint r, rp, s, sp;
    CMat R;                    // factorized form S_{r's} (T_{r's'} (x) T_{rs}) S_{rs'}
    double factorization_dev;  // max componentwise deviation from the product form
    std::array<int, 4> worst;  // (a, b, c, d) of the worst component
};

// Builds the factorized R-matrix and checks it against the closed component
// form W_{r's}(d-c) Wbar_{r's'}(a-d) Wbar_{rs}(b-c) W_{rs'}(a-b); throws
// FactorizationMismatch when they disagree beyond tolerance.
RMatrixCP build_R(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                  const CurvePoint& sp);

// Frobenius residual of R Delta_{(rr'),(ss')}(g) - Delta_{(ss'),(rr')}(g) R,
// normalized by |R| |Delta(g)|.
double check_intertwiner(const RMatrixCP& rm, Gen g);

// Residuals of the four separate S/T intertwining identities.
std::array<double, 4> check_sufficiency(const CurvePoint& r, const CurvePoint& rp,
                                        const CurvePoint& s, const CurvePoint& sp, Gen g);

// The four-term relation left after cancellations in the S-intertwining of
// ebar0 at r' = r, s' = s, as a matrix identity on V (x) V; returns the
// normalized residual.
double check_four_term(const CurvePoint& r, const CurvePoint& s);

}  // namespace cpv
