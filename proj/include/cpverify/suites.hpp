#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpverify/lattice.hpp"

namespace cpv {

struct CheckLine {
    std::string name;
    double value = 0;
    double tol = 0;     // pass when value <= tol, or lo <= value <= tol for window checks
    double lo = 0;
    bool window = false;
    bool pass = false;
};

struct SuiteReport {
    std::string target;
    std::vector<CheckLine> checks;

    bool all_pass() const;
    const CheckLine* worst() const;  // largest value/tol ratio among failures, else overall
    void add(const std::string& name, double value, double tol);
    void add_window(const std::string& name, double value, double lo, double hi);
};

struct SuiteConfig {
    int n = 3;
    double kprime = -1.0;  // < 0: sample from the k' grid
    int samples = 20;
    uint64_t seed = 12345;
    int cols = 4, rows = 4;  // lattice cells per axis
    int L = 3;               // chain length
    double u0 = 0.4;         // base chart parameter for point construction
    double theta = pi / 2;
    double phi = 0.2, phibar = 0.5;
    double phi_plus = 0.05, phi_minus = 0.02;
    double p_nome = 1e-4;
    Engine engine = Engine::contract_omp;
};

SuiteReport suite_star_triangle(const SuiteConfig& cfg);
SuiteReport suite_crossing(const SuiteConfig& cfg);
SuiteReport suite_rmatrix(const SuiteConfig& cfg);
SuiteReport suite_sufficiency(const SuiteConfig& cfg);
SuiteReport suite_dh(const SuiteConfig& cfg);
SuiteReport suite_contour(const SuiteConfig& cfg);
SuiteReport suite_transfer(const SuiteConfig& cfg);
SuiteReport suite_hamiltonian(const SuiteConfig& cfg);
SuiteReport suite_kw(const SuiteConfig& cfg);
SuiteReport suite_ising(const SuiteConfig& cfg);
SuiteReport suite_near_fz(const SuiteConfig& cfg);
SuiteReport suite_elliptic(const SuiteConfig& cfg);

// dispatch by CLI target name; throws DomainError on unknown targets
SuiteReport run_suite(const std::string& target, const SuiteConfig& cfg);

struct SweepRow {
    double param = 0;
    std::vector<std::pair<std::string, double>> values;
};

// Dirac mass extraction m/(4p) over a log grid of nomes.
std::vector<SweepRow> sweep_nome_mass(double p_lo, double p_hi, int steps, int cols, int rows,
                                      Engine e);
// twisted-DH residual across embedding angles at the FZ point
std::vector<SweepRow> sweep_theta_dh(int n, double lo, double hi, int steps, int cols, int rows,
                                     Engine e);
// star-triangle deviation across k'
std::vector<SweepRow> sweep_kprime_star_triangle(int n, double lo, double hi, int steps,
                                                 int samples, uint64_t seed);
// near-FZ expansion defect across phi+ (phi- = phi+/2)
std::vector<SweepRow> sweep_phi_near_fz(int n, double lo, double hi, int steps, double theta,
                                        int cols, int rows, Engine e);

}  // namespace cpv
