// Timing comparison of the serial reference paths against the OpenMP
// kernels: noise replicate evaluation and empirical signal-curve
// construction. Not part of the test suite.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "respow/experiment.hpp"
#include "respow/noise.hpp"
#include "respow/rng.hpp"
#include "respow/signal.hpp"

using namespace respow;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

LabeledScores synthetic_scores(std::size_t n, double prevalence, double delta,
                               std::uint64_t seed) {
    SplitMix64 rng(seed);
    LabeledScores data;
    data.scores.reserve(n);
    data.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = rng.next_unit() < prevalence;
        double x = rng.next_unit() + rng.next_unit() + rng.next_unit(); // rough bell shape
        if (positive) x += delta;
        data.scores.push_back(x);
        data.labels.push_back(positive ? 1 : 0);
    }
    return data;
}

} // namespace

int main() {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("threads available: %d\n\n", threads);

    {
        const PopulationSpec pop{BinormalModel::standardized(shift_for_auroc(0.85)), 0.1, 5000};
        const auto plan = SamplingPlan::binormal(pop, 400, 42);
        const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};

        auto t0 = clock_type::now();
        const auto serial = estimate_noise_serial(plan, metrics);
        const double t_serial = ms_since(t0);

        t0 = clock_type::now();
        const auto parallel = estimate_noise(plan, metrics, 0);
        const double t_parallel = ms_since(t0);

        const bool identical = serial[0].replicate_values == parallel[0].replicate_values &&
                               serial[1].replicate_values == parallel[1].replicate_values;
        std::printf("noise replicates (N=5000, 400 reps, 2 metrics)\n");
        std::printf("  serial reference: %8.1f ms\n", t_serial);
        std::printf("  openmp kernel:    %8.1f ms   speedup %.2fx   identical: %s\n\n",
                    t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");
    }

    {
        const LabeledScores data = synthetic_scores(20000, 0.1, 0.35, 7);

        auto t0 = clock_type::now();
        const auto fast = empirical_signal_curve(data, 401, 1e-3);
        const double t_parallel = ms_since(t0);

        // reference: re-shift and re-score every grid point independently
        t0 = clock_type::now();
        std::vector<double> ref_auroc(fast.grid.increments.size());
        for (std::size_t i = 0; i < fast.grid.increments.size(); ++i) {
            const auto shifted = shifted_scores(data, fast.grid.increments[i]);
            ref_auroc[i] = auroc(shifted).value;
        }
        const double t_serial = ms_since(t0);

        bool identical = true;
        for (std::size_t i = 0; i < ref_auroc.size(); ++i) {
            identical = identical && ref_auroc[i] == fast.grid.auroc[i];
        }
        std::printf("empirical signal curve (n=20000, %zu grid points)\n",
                    fast.grid.increments.size());
        std::printf("  serial re-score (AUROC only): %8.1f ms\n", t_serial);
        std::printf("  openmp kernel (both metrics): %8.1f ms   identical: %s\n", t_parallel,
                    identical ? "yes" : "NO");
    }
    return 0;
}
