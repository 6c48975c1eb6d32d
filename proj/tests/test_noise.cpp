#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "respow/noise.hpp"

using namespace respow;

namespace {

// independent quantile re-implementation for the oracle check
double quantile_oracle(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto idx = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - std::floor(pos);
    if (idx + 1 == v.size()) return v[idx];
    return (1.0 - w) * v[idx] + w * v[idx + 1];
}

SamplingPlan small_binormal_plan(double auroc_target, double prevalence, long n, int replicates,
                                 std::uint64_t seed) {
    const PopulationSpec pop{BinormalModel::standardized(shift_for_auroc(auroc_target)),
                             prevalence, n};
    return SamplingPlan::binormal(pop, replicates, seed);
}

} // namespace

TEST_CASE("quantile conventions") {
    const std::vector<double> odd{1, 2, 3, 4, 5};
    CHECK(quantile(odd, 0.5) == 3.0);
    const std::vector<double> even{1, 2, 3, 4};
    CHECK(quantile(even, 0.5) == 2.5);
    CHECK(quantile(even, 0.0) == 1.0);
    CHECK(quantile(even, 1.0) == 4.0);
    CHECK_THROWS_AS(quantile(even, -0.1), std::domain_error);
    CHECK_THROWS_AS(quantile(even, 1.1), std::domain_error);
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::domain_error);

    SplitMix64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> values;
        const auto n = 1 + static_cast<std::size_t>(rng.next_unit() * 50);
        for (std::size_t i = 0; i < n; ++i) {
            values.push_back(std::round(rng.next_unit() * 20.0) / 20.0); // duplicates likely
        }
        const double q = rng.next_unit();
        CHECK(quantile(values, q) ==
              doctest::Approx(quantile_oracle(values, q)).epsilon(1e-14));
    }
}

TEST_CASE("draw_replicate determinism and stratification") {
    const auto plan = small_binormal_plan(0.8, 0.3, 200, 50, 12345);
    const auto once = draw_replicate(plan, 7);
    const auto again = draw_replicate(plan, 7);
    CHECK(once.scores == again.scores);
    CHECK(once.labels == again.labels);
    CHECK(draw_replicate(plan, 8).scores != once.scores);

    for (int r = 0; r < 50; ++r) {
        const auto sample = draw_replicate(plan, r);
        CHECK(sample.n_pos() == 60);
        CHECK(sample.size() == 200);
    }
    CHECK_THROWS_AS(draw_replicate(plan, 50), std::out_of_range);
    CHECK_THROWS_AS(draw_replicate(plan, -1), std::out_of_range);
}

TEST_CASE("empirical resampling preserves the pool prevalence exactly") {
    SplitMix64 rng(9);
    const auto pool = helpers::binormal_instance(rng, 35, 165, 0.8);
    const auto plan = SamplingPlan::empirical(pool, 20, 99);
    CHECK(plan.n_pos == 35);
    CHECK(plan.n_neg == 165);

    std::vector<double> pool_sorted = pool.scores;
    std::sort(pool_sorted.begin(), pool_sorted.end());
    for (int r = 0; r < 20; ++r) {
        const auto sample = draw_replicate(plan, r);
        CHECK(sample.n_pos() == 35);
        for (double s : sample.scores) {
            CHECK(std::binary_search(pool_sorted.begin(), pool_sorted.end(), s));
        }
    }
}

TEST_CASE("empirical resampling at an explicit sample size") {
    SplitMix64 rng(10);
    const auto pool = helpers::binormal_instance(rng, 30, 70, 1.0);
    const auto plan = SamplingPlan::empirical(pool, 10, 4, 0.05, 40);
    CHECK(plan.n_pos == 12); // 30% of 40
    CHECK(plan.n_neg == 28);
    CHECK(draw_replicate(plan, 0).size() == 40);
}

TEST_CASE("random classifier centering") {
    const auto plan = small_binormal_plan(0.5, 0.5, 200, 400, 5);
    const MetricId metrics[] = {MetricId::auroc};
    const auto noise = estimate_noise(plan, metrics);
    double mean = 0.0;
    for (double v : noise[0].replicate_values) mean += v;
    mean /= static_cast<double>(noise[0].replicate_values.size());
    CHECK(std::fabs(mean - 0.5) < 0.01);
}

TEST_CASE("replicate mean tracks the analytic auroc") {
    const double target = 0.85;
    const auto plan = small_binormal_plan(target, 0.3, 500, 2000, 2025);
    const MetricId metrics[] = {MetricId::auroc};
    const auto noise = estimate_noise(plan, metrics);
    double mean = 0.0;
    for (double v : noise[0].replicate_values) mean += v;
    mean /= static_cast<double>(noise[0].replicate_values.size());
    CHECK(std::fabs(mean - target) < 3.0 * hanley_mcneil_se(target, 150, 350));
}

TEST_CASE("noise estimate invariants") {
    const auto plan = small_binormal_plan(0.75, 0.2, 300, 600, 77);
    const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};
    const auto noise = estimate_noise(plan, metrics);
    REQUIRE(noise.size() == 2);
    for (const auto& est : noise) {
        REQUIRE(est.replicate_values.size() == 600);
        const double med = quantile(est.replicate_values, 0.5);
        CHECK(est.ci_low <= med);
        CHECK(med <= est.ci_high);
        CHECK(est.ci_low == quantile(est.replicate_values, 0.025));
        CHECK(est.ci_high == quantile(est.replicate_values, 0.975));

        double mean = 0.0;
        for (double v : est.replicate_values) mean += v;
        mean /= 600.0;
        double ss = 0.0;
        for (double v : est.replicate_values) ss += (v - mean) * (v - mean);
        CHECK(est.std_error == doctest::Approx(std::sqrt(ss / 599.0)).epsilon(1e-12));
    }
}

TEST_CASE("noise estimation is identical across worker counts and the serial path") {
    const auto plan = small_binormal_plan(0.7, 0.25, 150, 200, 31337);
    const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};
    const auto serial = estimate_noise_serial(plan, metrics);
    const auto one = estimate_noise(plan, metrics, 1);
    const auto four = estimate_noise(plan, metrics, 4);
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK(serial[m].replicate_values == one[m].replicate_values);
        CHECK(one[m].replicate_values == four[m].replicate_values);
        CHECK(serial[m].ci_low == four[m].ci_low);
        CHECK(serial[m].ci_high == four[m].ci_high);
        CHECK(serial[m].std_error == four[m].std_error);
    }

    SplitMix64 rng(4);
    const auto pool = helpers::binormal_instance(rng, 40, 160, 1.0);
    const auto emp_plan = SamplingPlan::empirical(pool, 100, 11);
    const auto emp_serial = estimate_noise_serial(emp_plan, metrics);
    const auto emp_parallel = estimate_noise(emp_plan, metrics, 4);
    CHECK(emp_serial[0].replicate_values == emp_parallel[0].replicate_values);
    CHECK(emp_serial[1].replicate_values == emp_parallel[1].replicate_values);
}

TEST_CASE("ci width shrinks roughly as one over sqrt(n)") {
    const MetricId metrics[] = {MetricId::auroc};
    const auto small = estimate_noise(small_binormal_plan(0.75, 0.2, 200, 1500, 8), metrics);
    const auto large = estimate_noise(small_binormal_plan(0.75, 0.2, 20000, 1500, 8), metrics);
    const double ratio = (small[0].ci_high - small[0].ci_low) /
                         (large[0].ci_high - large[0].ci_low);
    CHECK(ratio >= 5.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("alpha controls the interval mass") {
    const PopulationSpec pop{BinormalModel::standardized(shift_for_auroc(0.8)), 0.3, 200};
    const auto wide = SamplingPlan::binormal(pop, 400, 3, 0.05);
    const auto narrow = SamplingPlan::binormal(pop, 400, 3, 0.5);
    const MetricId metrics[] = {MetricId::auroc};
    const auto ci95 = estimate_noise(wide, metrics);
    const auto ci50 = estimate_noise(narrow, metrics);
    CHECK(ci50[0].ci_high - ci50[0].ci_low < ci95[0].ci_high - ci95[0].ci_low);
    CHECK(ci95[0].alpha == 0.05);
    CHECK(ci50[0].alpha == 0.5);
}

TEST_CASE("sampling plan validation") {
    const PopulationSpec pop{BinormalModel::standardized(1.0), 0.3, 100};
    CHECK_THROWS_AS(SamplingPlan::binormal(pop, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(SamplingPlan::binormal(pop, 100, 0, 1.5), std::domain_error);

    LabeledScores single{{0.1, 0.2, 0.3}, {1, 1, 1}};
    CHECK_THROWS_AS(SamplingPlan::empirical(single, 10, 0), std::invalid_argument);

    SplitMix64 rng(2);
    const auto pool = helpers::binormal_instance(rng, 3, 97, 1.0);
    // 3% prevalence rounds to zero positives at a resample size of 10
    CHECK_THROWS_AS(SamplingPlan::empirical(pool, 10, 0, 0.05, 10), std::invalid_argument);

    const auto plan = SamplingPlan::empirical(pool, 10, 0);
    const MetricId none[] = {MetricId::auroc};
    CHECK_THROWS_AS(estimate_noise(plan, std::span<const MetricId>{none, 0}),
                    std::invalid_argument);
}
