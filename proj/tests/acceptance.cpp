// Acceptance suite: one pass/fail line per criterion.
//   1  star-triangle relation, N in {2,3,4,5}
//   2  crossing symmetry
//   3  R-matrix factorization, intertwining, sufficiency conditions
//   4  twisted discrete holomorphicity + engine cross-check + negative control
//   5  tail path independence
//   6  FZ reduction to the plain discrete Cauchy-Riemann relation
//   7  near-FZ expansion: third-order remainder and bracket sums
//   8  Ising: bare theta-coefficient identities, Dirac mass, conjugate relation
//   9  transfer matrix: commutation, translation limit, anisotropic limit
//  10  hamiltonian hermiticity and Kramers-Wannier sector exchange
//  11  elliptic module: sn/cn/dn identities and nome expansions
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "cpverify/suites.hpp"

using namespace cpv;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<SuiteReport> parts;
    double seconds = 0;

    bool pass() const {
        for (const auto& p : parts)
            if (!p.all_pass()) return false;
        return true;
    }
};

void summarize(const Criterion& c, bool verbose) {
    int checks = 0, failed = 0;
    const CheckLine* worst = nullptr;
    for (const auto& p : c.parts) {
        checks += int(p.checks.size());
        for (const auto& line : p.checks)
            if (!line.pass) {
                ++failed;
                worst = &line;
            }
    }
    std::printf("[%2d] %-52s %4d checks  %6.1fs  %s\n", c.id, c.title.c_str(), checks, c.seconds,
                c.pass() ? "PASS" : "FAIL");
    if (!c.pass() && worst)
        std::printf("     first failing check: %s = %.6e\n", worst->name.c_str(), worst->value);
    if (verbose)
        for (const auto& p : c.parts)
            for (const auto& line : p.checks)
                std::printf("       %-64s %11.4e %s\n", line.name.c_str(), line.value,
                            line.pass ? "ok" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
    }

    std::vector<Criterion> cs;
    auto timed = [&](int id, const std::string& title, auto&& fn) {
        if (only != 0 && only != id) return;
        Criterion c{id, title, {}};
        const auto t0 = std::chrono::steady_clock::now();
        fn(c.parts);
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        summarize(c, verbose);
        cs.push_back(std::move(c));
    };

    timed(1, "star-triangle relation", [](std::vector<SuiteReport>& out) {
        for (int n : {2, 3, 4, 5}) {
            SuiteConfig cfg;
            cfg.n = n;
            cfg.samples = 20;
            cfg.seed = 1000 + n;
            out.push_back(suite_star_triangle(cfg));
        }
    });

    timed(2, "crossing symmetry", [](std::vector<SuiteReport>& out) {
        for (int n : {2, 3, 4, 5}) {
            SuiteConfig cfg;
            cfg.n = n;
            cfg.samples = 20;
            cfg.seed = 2000 + n;
            out.push_back(suite_crossing(cfg));
        }
    });

    timed(3, "R-matrix factorization / intertwining / sufficiency",
          [](std::vector<SuiteReport>& out) {
              for (int n : {2, 3, 4}) {
                  SuiteConfig cfg;
                  cfg.n = n;
                  cfg.samples = 20;
                  cfg.seed = 3000 + n;
                  out.push_back(suite_rmatrix(cfg));
                  cfg.samples = 10;
                  out.push_back(suite_sufficiency(cfg));
              }
          });

    timed(4, "twisted discrete holomorphicity", [](std::vector<SuiteReport>& out) {
        for (int n : {2, 3, 4}) {
            SuiteConfig cfg;
            cfg.n = n;
            cfg.samples = 10;
            cfg.seed = 4000 + n;
            cfg.cols = cfg.rows = 4;
            out.push_back(suite_dh(cfg));
        }
    });

    timed(5, "tail path independence", [](std::vector<SuiteReport>& out) {
        SuiteConfig cfg;
        cfg.n = 3;
        cfg.seed = 5003;
        SuiteReport rep = suite_dh(cfg);
        SuiteReport filtered{"path-independence"};
        for (const auto& c : rep.checks)
            if (c.name.find("path independence") != std::string::npos) filtered.checks.push_back(c);
        out.push_back(filtered);
    });

    timed(6, "FZ reduction to plain discrete CR", [](std::vector<SuiteReport>& out) {
        for (int n : {2, 3, 4}) {
            SuiteConfig cfg;
            cfg.n = n;
            cfg.theta = n == 2 ? pi / 2 : 1.1;
            SuiteReport rep = suite_near_fz(cfg);
            SuiteReport filtered{"fz-reduction"};
            for (const auto& c : rep.checks)
                if (c.name.rfind("FZ", 0) == 0) filtered.checks.push_back(c);
            out.push_back(filtered);
        }
    });

    timed(7, "near-FZ expansion (third-order remainder)", [](std::vector<SuiteReport>& out) {
        for (double theta : {pi / 2, 1.1}) {
            SuiteConfig cfg;
            cfg.n = 3;
            cfg.theta = theta;
            cfg.phi_plus = 0.05;
            cfg.phi_minus = 0.02;
            SuiteReport rep = suite_near_fz(cfg);
            SuiteReport filtered{"near-fz"};
            for (const auto& c : rep.checks)
                if (c.name.rfind("FZ", 0) != 0) filtered.checks.push_back(c);
            out.push_back(filtered);
        }
    });

    timed(8, "Ising bare relations, Dirac mass, conjugate relation",
          [](std::vector<SuiteReport>& out) {
              SuiteConfig cfg;
              cfg.n = 2;
              cfg.theta = pi / 2;
              cfg.p_nome = 1e-3;
              out.push_back(suite_ising(cfg));
              // mass over the full sweep window
              SuiteReport sweep{"mass sweep"};
              for (const auto& row : sweep_nome_mass(1e-5, 1e-3, 5, 4, 4, Engine::contract_omp)) {
                  double m4p = 0;
                  for (const auto& [k, v] : row.values)
                      if (k == "mass_over_4p") m4p = v;
                  char nm[64];
                  std::snprintf(nm, sizeof nm, "m/(4p) at p = %.2e", row.param);
                  sweep.add(nm, std::abs(m4p - 1.0), 1e-3);
              }
              out.push_back(sweep);
          });

    timed(9, "transfer matrix", [](std::vector<SuiteReport>& out) {
        SuiteConfig cfg;
        cfg.n = 3;
        cfg.L = 3;
        cfg.kprime = 0.8;
        out.push_back(suite_transfer(cfg));
    });

    timed(10, "hamiltonian hermiticity and KW sector exchange", [](std::vector<SuiteReport>& out) {
        for (int n : {2, 3}) {
            SuiteConfig cfg;
            cfg.n = n;
            cfg.L = 3;
            cfg.samples = 20;
            cfg.seed = 10000 + n;
            out.push_back(suite_hamiltonian(cfg));
            out.push_back(suite_kw(cfg));
        }
    });

    timed(11, "elliptic functions", [](std::vector<SuiteReport>& out) {
        SuiteConfig cfg;
        out.push_back(suite_elliptic(cfg));
    });

    int npass = 0;
    for (const auto& c : cs) npass += c.pass();
    std::printf("acceptance: %d/%zu criteria passed\n", npass, cs.size());
    return npass == int(cs.size()) ? 0 : 1;
}
