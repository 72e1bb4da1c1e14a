#include "cpverify/qgroup.hpp"

#include <cmath>

namespace cpv {

const char* gen_name(Gen g) {
    switch (g) {
        case Gen::e0: return "e0";
        case Gen::e1: return "e1";
        case Gen::f0: return "f0";
        case Gen::f1: return "f1";
        case Gen::t0: return "t0";
        case Gen::t0i: return "t0^-1";
        case Gen::t1: return "t1";
        case Gen::t1i: return "t1^-1";
        case Gen::z0: return "z0";
        case Gen::z0i: return "z0^-1";
        case Gen::z1: return "z1";
        case Gen::z1i: return "z1^-1";
        case Gen::ebar0: return "ebar0";
        case Gen::ebar1: return "ebar1";
        case Gen::t0z0: return "t0z0";
        case Gen::t0z0i: return "t0z0^-1";
        case Gen::t1z1: return "t1z1";
        case Gen::t1z1i: return "t1z1^-1";
    }
    return "?";
}

const std::array<Gen, 10> kPrimaryGens = {Gen::e0, Gen::e1, Gen::f0, Gen::f1, Gen::t0,
                                          Gen::t1, Gen::z0, Gen::z1, Gen::ebar0, Gen::ebar1};

CMat CyclicRep::clock(int n, cplx omega) {
    CMat x(n, n);
    cplx w = 1.0;
    for (int a = 0; a < n; ++a) {
        x(a, a) = w;
        w *= omega;
    }
    return x;
}

CMat CyclicRep::shift(int n) {
    CMat z(n, n);
    for (int a = 0; a < n; ++a) z(a, mod(a + 1, n)) = 1.0;
    return z;
}

CyclicRep CyclicRep::build(const CurvePoint& r, const CurvePoint& rp, int root_sign) {
    const ModelParams& mp = r.params();
    const int n = mp.n;
    const cplx q = mp.q;
    if (std::abs(r.x()) < 1e-150 || std::abs(r.y()) < 1e-150 || std::abs(rp.x()) < 1e-150 ||
        std::abs(rp.y()) < 1e-150)
        throw DomainError("CyclicRep: x = 0 or y = 0 leaves c0 undefined");

    CyclicRep rep;
    rep.r_ = r;
    rep.rp_ = rp;
    rep.c0_ = double(root_sign) * q * r.sqrt_x() * rp.sqrt_x() / (r.sqrt_y() * rp.sqrt_y());

    const cplx x = r.x(), y = r.y(), mu = r.mu();
    const cplx xp = rp.x(), yp = rp.y(), mup = rp.mu();
    const cplx c0 = rep.c0_;
    const cplx mm = mu * mup;
    const cplx kap = q / ((q * q - 1.0) * (q * q - 1.0));

    const CMat X = clock(n, mp.omega);
    const CMat Z = shift(n);
    const CMat Zi = Z.dagger();  // Z is a permutation
    const CMat Xi = X.dagger();
    const CMat I = CMat::identity(n);

    auto& M = rep.mats_;
    M[Gen::e1] = kap * ((x * mm) * Z - yp * I) * X;
    M[Gen::f1] = (c0 / (x * xp * mm)) * (Xi * (y * Zi - (xp * mm) * I));
    M[Gen::t1] = (c0 * mm) * Z;
    M[Gen::z1] = (1.0 / c0) * I;
    M[Gen::e0] = kap * (Xi * ((y / mm) * Zi - xp * I));
    M[Gen::f0] = ((c0 * mm / xp) * Z - (q * q / (c0 * y)) * I) * X;
    M[Gen::t0] = (1.0 / (c0 * mm)) * Zi;
    M[Gen::z0] = c0 * I;
    M[Gen::t0i] = (c0 * mm) * Z;
    M[Gen::t1i] = (1.0 / (c0 * mm)) * Zi;
    M[Gen::z0i] = (1.0 / c0) * I;
    M[Gen::z1i] = c0 * I;
    M[Gen::ebar0] = M[Gen::t0] * M[Gen::f0];
    M[Gen::ebar1] = M[Gen::t1] * M[Gen::f1];
    M[Gen::t0z0] = (1.0 / mm) * Zi;
    M[Gen::t0z0i] = (1.0 / (c0 * c0 * mm)) * Zi;
    M[Gen::t1z1] = mm * Z;
    M[Gen::t1z1i] = (c0 * c0 * mm) * Z;
    return rep;
}

const CMat& CyclicRep::mat(Gen g) const {
    auto it = mats_.find(g);
    if (it == mats_.end()) throw DomainError("CyclicRep::mat: unknown generator");
    return it->second;
}

CoprodRule coproduct_rule(Gen g) {
    switch (g) {
        case Gen::e0: return {false, Gen::t0z0, std::nullopt};
        case Gen::e1: return {false, Gen::t1z1, std::nullopt};
        case Gen::f0: return {false, Gen::z0i, Gen::t0i};
        case Gen::f1: return {false, Gen::z1i, Gen::t1i};
        case Gen::ebar0: return {false, Gen::t0z0i, std::nullopt};
        case Gen::ebar1: return {false, Gen::t1z1i, std::nullopt};
        default: return {true, g, g};
    }
}

CMat coproduct_matrix(Gen g, const std::vector<const CyclicRep*>& slots) {
    const int L = int(slots.size());
    if (L == 0) throw DomainError("coproduct_matrix: empty slot list");
    if (L > 4) throw DomainError("coproduct_matrix: dense verification capped at 4 tensor factors");
    const CoprodRule rule = coproduct_rule(g);
    if (rule.grouplike) {
        CMat out = slots[0]->mat(g);
        for (int i = 1; i < L; ++i) out = CMat::kron(out, slots[i]->mat(g));
        return out;
    }
    CMat total;
    for (int m = 0; m < L; ++m) {
        CMat term = m == 0 ? slots[0]->mat(g) : slots[0]->mat(rule.left);
        for (int i = 1; i < L; ++i) {
            const CMat& f = i < m    ? slots[i]->mat(rule.left)
                            : i == m ? slots[i]->mat(g)
                            : rule.right ? slots[i]->mat(*rule.right)
                                         : CMat::identity(slots[i]->dim());
            term = CMat::kron(term, f);
        }
        total = m == 0 ? term : total + term;
    }
    return total;
}

CMat pair_coproduct(Gen g, const CyclicRep& a, const CyclicRep& b) {
    return coproduct_matrix(g, {&a, &b});
}

static CMat s_matrix(const CurvePoint& r, const CurvePoint& s, int arg_sign) {
    const int n = r.params().n;
    const WeightTable t(r, s);
    CMat S(n * n, n * n);
    for (int e1 = 0; e1 < n; ++e1)
        for (int e2 = 0; e2 < n; ++e2) S(e2 * n + e1, e1 * n + e2) = t.w(arg_sign * (e1 - e2));
    return S;
}

CMat build_S(const CurvePoint& r, const CurvePoint& s) { return s_matrix(r, s, +1); }

CMat build_T(const CurvePoint& r, const CurvePoint& s) {
    const int n = r.params().n;
    const WeightTable t(r, s);
    CMat T(n, n);
    for (int rho = 0; rho < n; ++rho)
        for (int e = 0; e < n; ++e) T(rho, e) = t.wbar(e - rho);
    return T;
}

RMatrixCP build_R(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                  const CurvePoint& sp) {
    const int n = r.params().n;
    RMatrixCP rm;
    rm.r = r;
    rm.rp = rp;
    rm.s = s;
    rm.sp = sp;
    // In this encoding (first tensor slot = leftmost kron factor) the
    // factorized form reads S_{r's} (T_{rs} (x) T_{r's'}) S_{rs'}, the outer
    // flip carrying the reversed weight argument; the slot bookkeeping runs
    // opposite to the double-line pictures, and this composition is the one
    // that reproduces the closed component form exactly.
    rm.R = s_matrix(rp, s, -1) * CMat::kron(build_T(r, s), build_T(rp, sp)) * s_matrix(r, sp, +1);

    const WeightTable w_rps(rp, s), w_rpsp(rp, sp), w_rs(r, s), w_rsp(r, sp);
    double dev = 0, scale = rm.R.max_abs();
    rm.worst = {0, 0, 0, 0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const cplx closed =
                        w_rps.w(d - c) * w_rpsp.wbar(a - d) * w_rs.wbar(b - c) * w_rsp.w(a - b);
                    const double dd = std::abs(rm.R(d * n + c, a * n + b) - closed);
                    if (dd > dev) {
                        dev = dd;
                        rm.worst = {a, b, c, d};
                    }
                }
    rm.factorization_dev = dev / std::max(scale, 1e-30);
    if (rm.factorization_dev > 1e3 * r.params().tol)
        throw FactorizationMismatch("build_R: factorized and closed forms disagree", rm.worst[0],
                                    rm.worst[1], rm.worst[2], rm.worst[3]);
    return rm;
}

double check_intertwiner(const RMatrixCP& rm, Gen g) {
    const CyclicRep in1 = CyclicRep::build(rm.r, rm.rp);
    const CyclicRep in2 = CyclicRep::build(rm.s, rm.sp);
    const CMat din = pair_coproduct(g, in1, in2);
    const CMat dout = pair_coproduct(g, in2, in1);
    const double den = rm.R.fro_norm() * din.fro_norm();
    return (rm.R * din - dout * rm.R).fro_norm() / std::max(den, 1e-300);
}

// opposite coproduct: Delta^op(g) = right (x) g + g (x) left
static CMat pair_coproduct_op(Gen g, const CyclicRep& a, const CyclicRep& b) {
    const CoprodRule rule = coproduct_rule(g);
    if (rule.grouplike) return CMat::kron(a.mat(g), b.mat(g));
    const CMat ra = rule.right ? a.mat(*rule.right) : CMat::identity(a.dim());
    return CMat::kron(ra, b.mat(g)) + CMat::kron(a.mat(g), b.mat(rule.left));
}

std::array<double, 4> check_sufficiency(const CurvePoint& r, const CurvePoint& rp,
                                        const CurvePoint& s, const CurvePoint& sp, Gen g) {
    const int n = r.params().n;
    auto rep = [&](const CurvePoint& a, const CurvePoint& b) { return CyclicRep::build(a, b); };
    auto resid = [&](const CMat& A, const CMat& din, const CMat& dout) {
        const double den = A.fro_norm() * din.fro_norm();
        return (A * din - dout * A).fro_norm() / std::max(den, 1e-300);
    };

    // The four steps of the factorization, stated in this encoding.  Each
    // flip toggles between Delta and Delta^op on the intermediate mixed
    // pairs; the half-line relabelings follow the crossings:
    //   S_{rs'} : D_{(rr'),(ss')}    -> D^op_{(sr),(s'r')}
    //   T_rs (x) 1   : D^op_{(sr),(s'r')} -> D^op_{(rs),(s'r')}
    //   1 (x) T_{r's'} : D^op_{(rs),(s'r')} -> D^op_{(rs),(r's')}
    //   S_{r's} : D^op_{(rs),(r's')} -> D_{(ss'),(rr')}
    const CMat d0 = pair_coproduct(g, rep(r, rp), rep(s, sp));
    const CMat d1 = pair_coproduct_op(g, rep(s, r), rep(sp, rp));
    const CMat d2 = pair_coproduct_op(g, rep(r, s), rep(sp, rp));
    const CMat d3 = pair_coproduct_op(g, rep(r, s), rep(rp, sp));
    const CMat d4 = pair_coproduct(g, rep(s, sp), rep(r, rp));

    std::array<double, 4> out{};
    out[0] = resid(s_matrix(r, sp, +1), d0, d1);
    out[1] = resid(CMat::kron(build_T(r, s), CMat::identity(n)), d1, d2);
    out[2] = resid(CMat::kron(CMat::identity(n), build_T(rp, sp)), d2, d3);
    out[3] = resid(s_matrix(rp, s, -1), d3, d4);
    return out;
}

double check_four_term(const CurvePoint& r, const CurvePoint& s) {
    // S-intertwining of ebar0 at r' = r, s' = s.  The two tail-free terms and
    // the two doubly-crossed terms cancel through the vertex, which leaves
    //   -y_r^{-1} S (XA (x) 1) + x_s^{-1} S (A (x) X)
    //     = -q^2 y_s^{-1} (1 (x) CX) S + x_r^{-1} (X (x) C) S
    // with A = pi_rr(t0 z0^-1), C = pi_sr(t0 z0^-1); the q^2 comes from
    // commuting X through Z^{-1}.
    const int n = r.params().n;
    const ModelParams& mp = r.params();
    const cplx xr = r.x(), yr = r.y(), xs = s.x(), ys = s.y();
    const cplx fr = disorder_f(r), fs = disorder_f(s);
    const CMat X = CyclicRep::clock(n, mp.omega);
    const CMat Zi = CyclicRep::shift(n).dagger();
    const CMat I = CMat::identity(n);
    const CMat S = build_S(r, s);

    const CMat A = (fr * fr) * Zi;
    const CMat C = (fs * fr) * Zi;

    const CMat lhs = (-1.0 / yr) * (S * CMat::kron(X * A, I)) + (1.0 / xs) * (S * CMat::kron(A, X));
    const CMat rhs =
        (-mp.q * mp.q / ys) * (CMat::kron(I, C * X) * S) + (1.0 / xr) * (CMat::kron(X, C) * S);
    const double den = std::max(lhs.fro_norm(), rhs.fro_norm());
    return (lhs - rhs).fro_norm() / std::max(den, 1e-300);
}

}  // namespace cpv
