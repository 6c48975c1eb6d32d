#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "respow/binormal.hpp"
#include "respow/scores.hpp"

namespace respow {

// Replicate-drawing plan: a parametric binormal population or an empirical
// score pool. Class counts are fixed per replicate (stratified), so no
// replicate can be degenerate.
struct SamplingPlan {
    std::variant<PopulationSpec, LabeledScores> population;
    int replicates = 10000;
    long n_pos = 0;
    long n_neg = 0;
    double alpha = 0.05; // CI mass outside the interval
    std::uint64_t master_seed = 0;

    static SamplingPlan binormal(const PopulationSpec& pop, int replicates,
                                 std::uint64_t seed, double alpha = 0.05);
    // Resamples the pool with replacement at the pool's own class counts
    // unless an explicit sample_size is given (then counts follow the
    // pool's prevalence, rounded).
    static SamplingPlan empirical(LabeledScores pool, int replicates,
                                  std::uint64_t seed, double alpha = 0.05,
                                  long sample_size = 0);
    void validate() const;
};

// Monte Carlo summary of one metric's sampling distribution.
struct NoiseEstimate {
    MetricId metric;
    std::vector<double> replicate_values; // replicate order
    double ci_low = 0.0;   // quantile(alpha/2)
    double ci_high = 0.0;  // quantile(1 - alpha/2)
    double std_error = 0.0; // sample standard deviation of the replicates
    double alpha = 0.05;
};

// Order-statistic quantile with linear interpolation at rank q*(n-1).
// Throws std::domain_error for q outside [0,1] or empty input.
double quantile(std::span<const double> values, double q);

// The sample for replicate `index`: a pure function of
// (plan.master_seed, index), independent of evaluation order.
LabeledScores draw_replicate(const SamplingPlan& plan, int replicate_index);

// Evaluates every replicate for every requested metric. All metrics share
// the same replicate draws. Replicates run across `workers` OpenMP
// threads (0 = default); each writes its own slot, so the result is
// bit-identical for any worker count.
std::vector<NoiseEstimate> estimate_noise(const SamplingPlan& plan,
                                          std::span<const MetricId> metrics,
                                          int workers = 0);

// Plain single-threaded loop over draw_replicate() and the scores module.
// Reference implementation the parallel path is checked against.
std::vector<NoiseEstimate> estimate_noise_serial(const SamplingPlan& plan,
                                                 std::span<const MetricId> metrics);

} // namespace respow
