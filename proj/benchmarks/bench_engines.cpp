// Times the serial reference engines against the OpenMP kernels on the same
// spin system and checks that they produce identical sums.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cpverify/lattice.hpp"
#include "cpverify/parafermion.hpp"

using namespace cpv;

static double time_engine(const SpinSystem& sys, Engine e, cplx& out, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < reps; ++k) out = partition_sum(sys, e);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

static SpinSystem make_system(int cells, int n) {
    const ModelParams mp = ModelParams::make(n, 0.8);
    const CurvePoint r = make_point_from_chart(mp, 0.2);
    const CurvePoint s = make_point_from_chart(mp, 0.2 + 1.1);
    const DiamondLattice lat(cells, cells, 1.1);
    const std::vector<WeightTable> tables = {WeightTable(r, s)};
    // a current insertion makes the tables inhomogeneous, like the suites do
    int ci = cells / 2, cj = cells / 2;
    if (mod(ci + cj, 2) != 0) ++ci;
    const auto plq = make_plaquette(lat, ci, cj);
    return build_system(lat, tables, current_insertion(lat, TailVariant::ebar0, plq.redge[0]));
}

int main(int argc, char** argv) {
    const int cells = argc > 1 ? std::atoi(argv[1]) : 9;
    const int n = argc > 2 ? std::atoi(argv[2]) : 4;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

    // contraction scales to wide lattices; raw enumeration is benchmarked on
    // the largest size it can still cover
    {
        const SpinSystem sys = make_system(cells, n);
        std::printf("contract   %dx%d cells, N=%d:\n", cells, cells, n);
        cplx zs, zo;
        const double t_cs = time_engine(sys, Engine::contract_serial, zs, 3);
        const double t_co = time_engine(sys, Engine::contract_omp, zo, 3);
        std::printf("  serial %.4f s | omp %.4f s | speedup %.2fx | agree %.2e\n", t_cs, t_co,
                    t_cs / t_co, std::abs(zs - zo));
    }
    {
        const int ecells = std::min(cells, 4);
        const int en = std::min(n, 3);
        const SpinSystem sys = make_system(ecells, en);
        std::printf("enumerate  %dx%d cells, N=%d:\n", ecells, ecells, en);
        cplx zs, zo;
        const double t_es = time_engine(sys, Engine::enumerate_serial, zs, 1);
        const double t_eo = time_engine(sys, Engine::enumerate_omp, zo, 1);
        std::printf("  serial %.4f s | omp %.4f s | speedup %.2fx | agree %.2e\n", t_es, t_eo,
                    t_es / t_eo, std::abs(zs - zo));
        cplx zc;
        time_engine(sys, Engine::contract_omp, zc, 1);
        std::printf("  enumerate vs contract: %.3e (relative)\n",
                    std::abs(zs - zc) / std::abs(zc));
    }
    return 0;
}
