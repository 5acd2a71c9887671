// Compares the OpenMP growth-profile sweep against the serial reference on the
// most expensive gallery nets. Both paths must produce bitwise-identical
// profiles; the benchmark reports wall times and the speedup.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "colombeau/asymptotics.hpp"
#include "colombeau/embeddings.hpp"

using namespace colombeau;

namespace {

template <class F>
double timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main() {
    EpsilonGrid grid = default_grid();
    Gallery g = gallery(grid);
    CompactBox box(std::vector<std::array<double, 2>>{{-1.0, 1.0}, {-1.0, 1.0}});

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at build time; both paths run serially\n");
#endif

    const char* items[] = {"delta_radial_2d", "bump_asym_2d", "radial_gauss_2d"};
    for (const char* name : items) {
        const NetFunction& u = g.function(name);
        GrowthProfile serial, parallel;
        MultiIndex order = zero_index(u.dimension);
        // warm-up excluded from timing
        growth_profile_serial(u, box, order);
        double ts = timed([&] { serial = growth_profile_serial(u, box, order); });
        double tp = timed([&] { parallel = growth_profile(u, box, order); });
        bool identical = serial.entries == parallel.entries;
        std::printf("%-18s serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n", name,
                    ts, tp, ts / tp, identical ? "bitwise-identical" : "MISMATCH");
        if (!identical) return 1;
    }
    return 0;
}
