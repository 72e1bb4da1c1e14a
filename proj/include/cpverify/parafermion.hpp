#pragma once

#include <array>

#include "cpverify/elliptic.hpp"
#include "cpverify/lattice.hpp"

namespace cpv {

// A quasi-local current insertion point: the spin site carrying X^{+-1} and
// the adjacent dual site where the disorder tail terminates.
struct MidEdge {
    GridPt sigma, mu;
};

// conformal spin s = 1 - 1/N
double conformal_spin(int n);

// X power carried by the local insertion: +1 for ebar0/e1/bare, -1 for e0/ebar1
int x_power(TailVariant v);

// spin of the dressed operator: +s for ebar variants, -s for e variants;
// the dressing phase is always exp(-i spin alpha)
double variant_spin(TailVariant v, int n);

// principal argument of z_sigma - z_mu
double edge_alpha(const DiamondLattice& lat, const MidEdge& r);

// Canonical tail: the leftmost dual site on r_mu's diagonal row, then
// rightward to r_mu.  The tail runs on r_mu's side of the spin row, which
// realizes the tail ordering used by the plaquette identities.
TailSpec canonical_tail(const DiamondLattice& lat, TailVariant v, const MidEdge& r);

// The full insertion for j_v(r): X^{x_power} at sigma, the canonical tail
// into mu and, when requested, a compensating X^{-x_power} at the top-corner
// spin so that free-sum expectations do not vanish by Z_N neutrality.
InsertionSet current_insertion(const DiamondLattice& lat, TailVariant v, const MidEdge& r,
                               bool compensate = true);

cplx current_expectation(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                         TailVariant v, const MidEdge& r, Engine e = Engine::contract_omp,
                         bool compensate = true);

// One rhombus with its four mid-edges in the standard labeling
// (r1 top-left, r2 bottom-left, r3 bottom-right, r4 top-right), the
// counterclockwise boundary increments dz_j and edge arguments alpha_j.
struct PlaquetteStencil {
    int ci = 0, cj = 0;
    EdgeKind kind = EdgeKind::W;
    std::array<MidEdge, 4> redge;
    std::array<cplx, 4> dz;
    std::array<double, 4> alpha;
};
PlaquetteStencil make_plaquette(const DiamondLattice& lat, int ci, int cj);

// Twisted phases e^{+- i phi_{r,s}/N} in the plaquette pattern of the given
// variant; positions carry (phi_r, phi_s, phi_r, phi_s).
std::array<cplx, 4> dh_phase_coefficients(TailVariant v, EdgeKind kind, const CurvePoint& r,
                                          const CurvePoint& s);

struct DhReport {
    cplx residual = 0;  // sum_j coeff_j dz_j O_j   (dzbar for the e variants)
    double scale = 0;   // max_j |dz_j O_j|
    std::array<cplx, 4> current{};
    std::array<cplx, 4> dressed{};
    std::array<cplx, 4> coeff{};
};
DhReport dh_residual(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                     TailVariant v, const PlaquetteStencil& plq, Engine e = Engine::contract_omp);

struct ContourReport {
    cplx boundary_sum = 0;      // assembled weighted sum over boundary mid-edges
    cplx plaquette_sum = 0;     // sum of the per-cell four-term residuals
    double interior_coeff = 0;  // largest surviving coefficient on an interior mid-edge
    double scale = 0;
};
// Region = list of cells (ci, cj); must be simply connected.
ContourReport dh_contour(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                         TailVariant v, const std::vector<std::pair<int, int>>& cells,
                         Engine e = Engine::contract_omp);

// Rapidity pair for the chiral neighbourhood of the FZ point: given the
// embedding angle theta and phi^{+-}_s = (phi_s +- phibar_s)/2, solves the
// chart relations for the s point and places r at u_r = u_s - theta on the
// same curve.  Requires phi_plus * phi_minus != 0 unless both vanish.
struct NearFzPoints {
    ModelParams mp;
    CurvePoint r, s;
};
NearFzPoints near_fz_points(int n, double theta, double phi_plus, double phi_minus);

struct NearFzReport {
    cplx defect = 0;   // D = [plain CR combination] - [truncated expansion]
    double scale = 0;  // max_j |dz_j O^{(s)}_j|
    std::array<cplx, 4> bracket_sums{};  // coefficient sums, each 4 sin(theta)
    bool asymptotic = true;              // false when |phi+-| leaves the expansion regime
};
NearFzReport near_fz_defect(int n, double theta, double phi_plus, double phi_minus, int cols,
                            int rows, Engine e = Engine::contract_omp);

struct IsingDiracReport {
    double bare1 = 0, bare2 = 0;  // relative residuals of the theta-coefficient identities
    cplx dpsi = 0;                // sum_j dz_j psi_j
    cplx mass_rhs = 0;            // -ip [t^{-1} psibar_1 + t psibar_2 + t^{-1} psibar_3 + t psibar_4]
    cplx dpsibar = 0;             // sum_j conj(dz_j) psibar_j
    cplx mass_rhs_conj = 0;       // +ip [t psi_1 + t^{-1} psi_2 + t psi_3 + t^{-1} psi_4]
    cplx mass = 0;                // 4 dpsi / (-i [bracket]); ~ 4p
    double psi_scale = 0, psibar_scale = 0;
    double sqrtp_defect = 0;      // largest p^{1/2} coefficient left in the combined expansion
    cplx coeff_sum = 0;           // sum of RHS coefficients; analytic value -4ip sin(theta)
};
// The N = 2 checks on a W plaquette with the elliptic parameterisation at
// beta = (K/pi)(i/2 log p + 2 beta'); theta = 2 (beta'_s - beta'_r).
IsingDiracReport ising_dirac_check(const EllipticContext& ctx, double beta_prime_r,
                                   double beta_prime_s, int cols, int rows,
                                   Engine e = Engine::contract_omp);

}  // namespace cpv
