#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "helpers.hpp"
#include "respow/experiment.hpp"
#include "respow/normal.hpp"

using namespace respow;

namespace {

StudySpec tiny_sweep_spec() {
    StudySpec spec;
    spec.prevalences = {0.2, 0.4};
    spec.quality_points = {0.7, 0.85};
    spec.sample_size = 400;
    spec.replicates = 200;
    spec.repeats = 2;
    spec.grid_step = 0.002;
    spec.master_seed = 5150;
    return spec;
}

// binormal-generated score file stand-in: balanced classes, AUROC ~ target
LabeledScores synthetic_pool(double target_auroc, std::size_t n, std::uint64_t seed) {
    const double delta = shift_for_auroc(target_auroc);
    SplitMix64 rng(seed);
    LabeledScores data;
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = i < n / 2;
        data.scores.push_back(normal_quantile(rng.next_unit()) + (positive ? delta : 0.0));
        data.labels.push_back(positive ? 1 : 0);
    }
    return data;
}

} // namespace

TEST_CASE("sweep shape and repeat averaging") {
    const auto spec = tiny_sweep_spec();
    const auto result = run_binormal_sweep(spec);
    REQUIRE(result.cells.size() == 4);
    REQUIRE(result.curves.size() == 2);
    for (const auto& cell : result.cells) {
        REQUIRE(cell.runs.size() == 2);
        REQUIRE(cell.delta_runs.size() == 2);
        const double mean = 0.5 * (cell.delta_runs[0] + cell.delta_runs[1]);
        CHECK(std::fabs(cell.delta_mean - mean) <= 1e-12);
        CHECK(cell.delta_min == std::min(cell.delta_runs[0], cell.delta_runs[1]));
        CHECK(cell.delta_max == std::max(cell.delta_runs[0], cell.delta_runs[1]));
        CHECK_FALSE(cell.bound_averaged.has_value());
    }
}

TEST_CASE("cells reproduce identically when run alone") {
    const auto full = run_binormal_sweep(tiny_sweep_spec());

    auto solo_spec = tiny_sweep_spec();
    solo_spec.prevalences = {0.4};
    solo_spec.quality_points = {0.85};
    const auto solo = run_binormal_sweep(solo_spec);

    const auto& full_cell = full.cells[3]; // prevalence 0.4, quality 0.85
    const auto& solo_cell = solo.cells[0];
    REQUIRE(full_cell.prevalence == solo_cell.prevalence);
    REQUIRE(full_cell.quality == solo_cell.quality);
    CHECK(full_cell.delta_runs == solo_cell.delta_runs);
    CHECK(full_cell.runs[0].reference.ci_low == solo_cell.runs[0].reference.ci_low);
    CHECK(full_cell.runs[0].companion.q_high == solo_cell.runs[0].companion.q_high);
}

TEST_CASE("sweep is deterministic and worker-independent") {
    auto spec = tiny_sweep_spec();
    spec.prevalences = {0.3};
    spec.repeats = 1;
    const auto a = run_binormal_sweep(spec);
    spec.workers = 1;
    const auto b = run_binormal_sweep(spec);
    spec.workers = 4;
    const auto c = run_binormal_sweep(spec);
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].delta_runs == b.cells[i].delta_runs);
        CHECK(b.cells[i].delta_runs == c.cells[i].delta_runs);
    }
}

TEST_CASE("bound averaging flag") {
    auto spec = tiny_sweep_spec();
    spec.prevalences = {0.3};
    spec.quality_points = {0.8};
    spec.average_ci_bounds = true;

    const auto result = run_binormal_sweep(spec);
    REQUIRE(result.cells.size() == 1);
    const auto& cell = result.cells[0];
    REQUIRE(cell.bound_averaged.has_value());
    const double expected_ref_low =
        0.5 * (cell.runs[0].reference.ci_low + cell.runs[1].reference.ci_low);
    CHECK(cell.bound_averaged->reference.ci_low ==
          doctest::Approx(expected_ref_low).epsilon(1e-12));
    CHECK(cell.bound_averaged->companion.kappa > 0.0);
}

TEST_CASE("cell failures carry their coordinates") {
    auto spec = tiny_sweep_spec();
    spec.quality_points = {0.98};
    spec.max_auroc = 0.981; // curve barely covers the point: CI spills over
    spec.grid_step = 0.0005;
    try {
        run_binormal_sweep(spec);
        FAIL("expected the sweep to abort");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("prevalence=") != std::string::npos);
        CHECK(msg.find("auroc=") != std::string::npos);
    }
}

TEST_CASE("study spec validation") {
    StudySpec spec;
    CHECK_NOTHROW(spec.validate());
    CHECK_NOTHROW(StudySpec::full_profile().validate());
    CHECK(StudySpec::full_profile().replicates == 10000);
    CHECK(StudySpec::full_profile().repeats == 3);

    auto bad = spec;
    bad.prevalences = {1.2};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = spec;
    bad.quality_points = {0.5};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = spec;
    bad.repeats = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = spec;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("empirical study on a balanced synthetic pool") {
    const auto pool = synthetic_pool(0.75, 10000, 42);
    StudySpec spec;
    spec.sample_size = 0; // resample at the pool size
    spec.replicates = 1200;
    spec.grid_points = 401;
    spec.target_step = 1e-3;
    spec.master_seed = 7;

    const auto result = run_empirical_study(pool, spec);
    CHECK(result.base_auroc == doctest::Approx(0.75).epsilon(0.02));
    REQUIRE(result.noise.size() == 2);
    CHECK(result.noise[0].metric == MetricId::auroc);
    CHECK(result.report.reference.kappa > 0.0);

    // balanced prevalence: AUPRC is a little noisier, so delta sits in the
    // low positive range
    CHECK(result.report.companion.delta > 0.02);
    CHECK(result.report.companion.delta < 0.30);

    // the curve passes through the baseline
    CHECK(result.curve.base_auroc == result.base_auroc);
}

TEST_CASE("empirical study is deterministic") {
    const auto pool = synthetic_pool(0.7, 2000, 3);
    StudySpec spec;
    spec.sample_size = 0;
    spec.replicates = 300;
    spec.grid_points = 101;
    spec.master_seed = 99;

    const auto a = run_empirical_study(pool, spec);
    spec.workers = 4;
    const auto b = run_empirical_study(pool, spec);
    CHECK(a.report.companion.delta == b.report.companion.delta);
    CHECK(a.noise[0].replicate_values == b.noise[0].replicate_values);
    CHECK(a.curve.curve.quality == b.curve.curve.quality);
}

TEST_CASE("single-point grid cannot map an interval") {
    const auto pool = synthetic_pool(0.7, 500, 11);
    StudySpec spec;
    spec.sample_size = 0;
    spec.replicates = 100;
    spec.grid_points = 1;
    CHECK_THROWS_AS(run_empirical_study(pool, spec), std::out_of_range);
}
