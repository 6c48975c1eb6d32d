#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "respow/resolve.hpp"
#include "respow/signal.hpp"

namespace respow {

// Configuration shared by the binormal sweep and the empirical study.
// Defaults are the desk profile (minutes on a laptop); full_profile()
// selects the full-size run.
struct StudySpec {
    std::vector<double> prevalences{0.01, 0.05, 0.10, 0.20, 0.30, 0.40, 0.50};
    std::vector<double> quality_points{0.65, 0.75, 0.85, 0.95};
    long sample_size = 10000;
    int replicates = 2000;
    int repeats = 1;
    double grid_step = 5e-4;   // binormal quality-grid spacing
    double max_auroc = 0.99995;
    int grid_points = 1000;    // empirical curve size
    double target_step = 1e-3; // empirical initial AUROC increment
    ImprovementStrategy strategy = ImprovementStrategy::additive_shift;
    double alpha = 0.05;
    std::uint64_t master_seed = 0;
    bool average_ci_bounds = false; // also average CI bounds across repeats
    int workers = 0;

    static StudySpec desk_profile() { return {}; }
    static StudySpec full_profile();
    void validate() const;
};

// One (prevalence, quality) cell of the sweep, with the per-run reports
// and the repeat-averaged relative difference. Averaging happens on delta;
// when average_ci_bounds is set, a report built from run-averaged CI
// bounds is attached as well.
struct SweepCell {
    double prevalence = 0.0;
    double quality = 0.0;
    std::vector<ResolutionReport> runs;
    std::vector<double> delta_runs;
    double delta_mean = 0.0;
    double delta_min = 0.0;
    double delta_max = 0.0;
    std::optional<ResolutionReport> bound_averaged;
};

struct SweepResult {
    StudySpec spec;
    std::vector<SweepCell> cells;    // prevalence-major order
    std::vector<SignalCurve> curves; // one per prevalence
};

// The prevalence x quality study over the standardized binormal family.
// Each cell's replicate seed derives from (master_seed, prevalence value,
// quality value, run index), so a cell reproduces identically whether it
// runs alone or inside the full grid.
SweepResult run_binormal_sweep(const StudySpec& spec);

struct EmpiricalResult {
    StudySpec spec;
    double base_auroc = 0.0;
    double base_auprc = 0.0;
    EmpiricalCurve curve;
    std::vector<NoiseEstimate> noise; // reference first, companion second
    ResolutionReport report;
};

// Shift-grid curve around the sample baseline, stratified-resampling noise
// at the baseline, and the resolution comparison of AUROC vs AUPRC.
EmpiricalResult run_empirical_study(const LabeledScores& data, const StudySpec& spec);

} // namespace respow
