#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pooltest/analysis.hpp"
#include "pooltest/hypergraph.hpp"
#include "pooltest/strategy_s2.hpp"

namespace {

using namespace pooltest;

template <class F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   results %s\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        const S2Params p{20, 2, 6, 3, 400};
        const S2Strategy strategy(p);
        VerifySummary serial, parallel;
        const double t_serial = time_ms([&] { serial = verify_exhaustive(strategy, 400, 2, false); });
        const double t_parallel =
            time_ms([&] { parallel = verify_exhaustive(strategy, 400, 2, true); });
        const bool equal = serial.all_correct == parallel.all_correct &&
                           serial.worst_total == parallel.worst_total &&
                           serial.worst_case_set == parallel.worst_case_set &&
                           serial.histogram == parallel.histogram;
        row("verify_exhaustive t=400", t_serial, t_parallel, equal);
    }

    {
        std::mt19937 rng(7);
        const BinaryCode code = random_constant_weight_code(24, 4000, 4, rng);
        const BitVec r = outcome_vector(code, {11, 222, 888, 3105});
        Hypergraph serial, parallel;
        const double t_serial = time_ms([&] { serial = build_hypergraph_serial(code, r, 4); });
        const double t_parallel = time_ms([&] { parallel = build_hypergraph(code, r, 4); });
        row("build_hypergraph t=4000", t_serial, t_parallel, serial.edges == parallel.edges);
        std::printf("  (consistent sets found: %zu)\n", serial.edges.size());
    }
    return 0;
}
