#pragma once

#include <utility>
#include <vector>

#include "cpverify/linalg.hpp"
#include "cpverify/weights.hpp"

namespace cpv {

struct GridPt {
    int i = 0, j = 0;
};
inline bool operator==(GridPt a, GridPt b) { return a.i == b.i && a.j == b.j; }

enum class Boundary { free_sum, fixed };

enum class Engine { enumerate_serial, enumerate_omp, contract_serial, contract_omp };

// Rhombic lattice embedded as P(i,j) = i e^{-i theta/2} + j e^{+i theta/2},
// 0 <= i <= cols, 0 <= j <= rows.  Grid points with even i+j are spin sites,
// odd ones dual sites.  Every unit cell is a rhombus holding one edge: even
// cells a horizontal W edge (left spin (i,j), right spin (i+1,j+1)), odd
// cells a vertical Wbar edge (top spin (i,j+1), bottom spin (i+1,j)).
class DiamondLattice {
public:
    DiamondLattice(int cols, int rows, double theta, Boundary b = Boundary::free_sum,
                   int fixed_value = 0);

    int cols() const { return cols_; }
    int rows() const { return rows_; }
    double theta() const { return theta_; }
    Boundary boundary() const { return boundary_; }
    int fixed_value() const { return fixed_value_; }

    bool in_grid(GridPt p) const { return p.i >= 0 && p.i <= cols_ && p.j >= 0 && p.j <= rows_; }
    bool is_spin(GridPt p) const { return in_grid(p) && mod(p.i + p.j, 2) == 0; }
    bool is_dual(GridPt p) const { return in_grid(p) && mod(p.i + p.j, 2) == 1; }
    bool is_boundary(GridPt p) const {
        return p.i == 0 || p.i == cols_ || p.j == 0 || p.j == rows_;
    }

    cplx position(GridPt p) const;

    int num_spins() const { return int(spins_.size()); }
    int spin_id(GridPt p) const;  // -1 when p is not a spin site
    GridPt spin_site(int id) const { return spins_[id]; }

    struct Edge {
        GridPt a, b;  // W: a left, b right; Wbar: a top, b bottom
        EdgeKind kind;
        int pair = 0;  // rapidity-pair index into the weight-table list
    };
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_at_cell(int ci, int cj) const;  // cell (ci,cj), 0 <= ci < cols, 0 <= cj < rows

    // leftmost dual site on the diagonal row {j - i == height}
    GridPt leftmost_dual(int height) const;
    // spin site near the top corner, used as a charge-compensating anchor
    GridPt top_corner_spin() const;

private:
    int cols_, rows_;
    double theta_;
    Boundary boundary_;
    int fixed_value_;
    std::vector<GridPt> spins_;
    std::vector<int> spin_id_;  // (cols+1)*(rows+1) grid, -1 for duals
    std::vector<Edge> edges_;
    std::vector<int> cell_edge_;
};

struct TailSpec {
    TailVariant variant = TailVariant::ebar0;
    std::vector<GridPt> path;  // dual sites; front() = boundary anchor, back() = r_mu
};

struct InsertionSet {
    std::vector<std::pair<GridPt, int>> x_powers;  // (spin site, power of X)
    std::vector<TailSpec> tails;
};

// Flattened spin system ready for summation.
struct SpinSystem {
    int n = 2;
    struct ETab {
        int a, b;               // spin ids; weight = val[(s_a - s_b) mod n]
        std::vector<cplx> val;
    };
    std::vector<ETab> etabs;
    std::vector<std::vector<cplx>> site_factor;  // empty vector = all ones
    std::vector<int> fixed;                      // fixed spin value, -1 = summed
    std::vector<int> layer_of;                   // grid column index i
    int nlayers = 0;
};

SpinSystem build_system(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                        const InsertionSet& ins = {});

cplx partition_sum(const SpinSystem& sys, Engine e);

cplx partition_function(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                        Engine e = Engine::contract_omp);

cplx expectation(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                 const InsertionSet& ins, Engine e = Engine::contract_omp);

// |<O_path1> - <O_path2>| / max(|<O_path1>|, eps) for two tails with the same
// endpoints; `base` carries the first tail (and any other insertions), `alt`
// replaces the first tail.
double check_path_independence(const DiamondLattice& lat, const std::vector<WeightTable>& tables,
                               const InsertionSet& base, const TailSpec& alt,
                               Engine e = Engine::contract_omp);

// Row-to-row transfer matrix on L sites, periodic:
//   T[{b},{a}] = prod_j W_rs(b_j - a_j) Wbar_rs(a_{j-1} - b_j).
// Members with equal vertical rapidity commute; at r = s it degenerates to
// the cyclic translation, and for u_r near u_s
//   T = P { (1 + O(eps)) - eps H_s/(2k') + O(eps^2) },  eps = u_r - u_s,
// with H_s the spin-chain Hamiltonian below (the identity part carries the
// per-cell free energy).
CMat transfer_matrix(const CurvePoint& r, const CurvePoint& s, int L);

CMat translation_matrix(int n, int L);

// Relative deviation of 2k' traceless[(1 - P^dag T)/eps] from traceless(H_s);
// O(eps) for points on the curve.
double hamiltonian_limit_residual(const ModelParams& mp, double u0, double kprime, int L,
                                  double eps);

// Spin-chain Hamiltonian
//   H = 1/(N cos phibar) sum_j sum_n [abar_n Z_j^n + a_n (X_j X_{j+1}^dag)^n],
//   a_n = e^{i(2n-N)phi/N}/sin(pi n/N),  abar_n = k' e^{i(2n-N)phibar/N}/sin(pi n/N),
// with twisted closure X_{L+1} = w^twist X_1.  Hermitian for real inputs.
CMat hamiltonian(const ModelParams& mp, cplx phi_s, cplx phibar_s, double kprime, int L,
                 int twist = 0);

// Eigenvalues restricted to the Z_N charge sector m (R = prod_j Z_j acting
// with eigenvalue w^{-m}).
std::vector<double> charge_sector_spectrum(const CMat& h, int n, int L, int m);

struct KWReport {
    double max_dev = 0;      // worst sector-spectrum deviation, relative to spectral scale
    double scale_factor = 1; // k' cos(phi)/cos(phibar) relating the two Hamiltonians
};
// Spectral exchange (m, mbar) <-> (mbar, m) under (phi, phibar, k') -> (phibar, phi, 1/k').
KWReport check_kw_duality(const ModelParams& mp, double phi, double phibar, double kprime, int L);

}  // namespace cpv
