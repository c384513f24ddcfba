// Compares the OpenMP kernels against their serial reference
// implementations and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>

#include "boundarylab/covering.hpp"
#include "boundarylab/deck.hpp"
#include "boundarylab/harmonic.hpp"
#include "boundarylab/systems.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bl;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%5.2f   %s\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                equal ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp not available; parallel kernels run serially\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        const long walks = 400000;
        HarmonicEstimate s, p;
        const double ts =
            time_ms([&] { s = harmonic_measure_annulus_mc_serial(2.0, cplx(1, 0), walks, 7); });
        const double tp =
            time_ms([&] { p = harmonic_measure_annulus_mc(2.0, cplx(1, 0), walks, 7); });
        report("walk-on-spheres 4e5", ts, tp, s.value == p.value);
    }

    {
        auto pants = pants_system();
        std::vector<cplx> s, p;
        const double ts = time_ms([&] { s = orbit_serial(pants, 10); });
        const double tp = time_ms([&] { p = orbit(pants, 10); });
        report("orbit words <= 10", ts, tp, s == p);
    }

    {
        auto pants = pants_system();
        LimitSetCover s, p;
        const double ts = time_ms([&] { s = limit_set_cover_serial(pants, 9); });
        const double tp = time_ms([&] { p = limit_set_cover(pants, 9); });
        bool equal = s.arcs.size() == p.arcs.size() && s.total_length == p.total_length;
        report("cover depth 9", ts, tp, equal);
    }

    {
        const ExplicitCovering cov = build_annulus_covering(2.0);
        std::vector<double> thetas;
        for (int i = 0; i < 2000; ++i) thetas.push_back(0.01 + kTwoPi * i / 2000.0);
        std::vector<RadialVerdict> s, p;
        const double ts = time_ms([&] { s = classify_radial_batch_serial(cov, thetas); });
        const double tp = time_ms([&] { p = classify_radial_batch(cov, thetas); });
        report("radial batch 2000", ts, tp, s == p);
    }
    return 0;
}
