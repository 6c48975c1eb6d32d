#include "respow/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "respow/rng.hpp"

namespace respow {

StudySpec StudySpec::full_profile() {
    StudySpec spec;
    spec.replicates = 10000;
    spec.repeats = 3;
    spec.grid_step = 5e-5;
    return spec;
}

void StudySpec::validate() const {
    if (prevalences.empty()) throw std::invalid_argument("StudySpec: prevalences empty");
    for (double p : prevalences) {
        if (!(p > 0.0 && p < 1.0)) throw std::domain_error("StudySpec: prevalence outside (0,1)");
    }
    if (quality_points.empty()) throw std::invalid_argument("StudySpec: quality points empty");
    for (double q : quality_points) {
        if (!(q > 0.5 && q < 1.0)) {
            throw std::domain_error("StudySpec: quality points must lie in (0.5,1)");
        }
    }
    // sample_size 0 means "pool-sized" for the empirical study
    if (sample_size < 0) throw std::invalid_argument("StudySpec: negative sample size");
    if (replicates < 2) throw std::invalid_argument("StudySpec: replicates must be >= 2");
    if (repeats < 1) throw std::invalid_argument("StudySpec: repeats must be >= 1");
    if (!(grid_step > 0.0)) throw std::domain_error("StudySpec: grid_step must be positive");
    if (!(max_auroc > 0.5 && max_auroc < 1.0)) {
        throw std::domain_error("StudySpec: max_auroc must lie in (0.5,1)");
    }
    if (grid_points < 1) throw std::invalid_argument("StudySpec: grid_points must be >= 1");
    if (!(target_step > 0.0 && target_step < 0.5)) {
        throw std::domain_error("StudySpec: target_step must lie in (0,0.5)");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("StudySpec: alpha outside (0,1)");
}

namespace {

// Replicate seeds key on the cell's parameter values, not list positions,
// so a cell reproduces identically when run on its own.
std::uint64_t cell_seed(std::uint64_t master, double prevalence, double quality, int run) {
    return derive_stream(master, {std::bit_cast<std::uint64_t>(prevalence),
                                  std::bit_cast<std::uint64_t>(quality),
                                  static_cast<std::uint64_t>(run)});
}

NoiseEstimate bounds_only(MetricId metric, double lo, double hi, double alpha) {
    NoiseEstimate est;
    est.metric = metric;
    est.ci_low = lo;
    est.ci_high = hi;
    est.alpha = alpha;
    return est;
}

} // namespace

SweepResult run_binormal_sweep(const StudySpec& spec) {
    spec.validate();
    if (spec.sample_size < 2) {
        throw std::invalid_argument("run_binormal_sweep: sample_size must be >= 2");
    }
    const QualityGrid grid{0.5, spec.max_auroc, spec.grid_step};

    SweepResult result;
    result.spec = spec;
    result.curves.reserve(spec.prevalences.size());
    for (double prevalence : spec.prevalences) {
        result.curves.push_back(binormal_signal_curve(prevalence, grid, spec.workers));
    }

    const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};
    for (std::size_t pi = 0; pi < spec.prevalences.size(); ++pi) {
        const double prevalence = spec.prevalences[pi];
        for (double quality : spec.quality_points) {
            SweepCell cell;
            cell.prevalence = prevalence;
            cell.quality = quality;
            try {
                for (int run = 0; run < spec.repeats; ++run) {
                    const PopulationSpec pop{BinormalModel::standardized(shift_for_auroc(quality)),
                                             prevalence, spec.sample_size};
                    const auto plan = SamplingPlan::binormal(
                        pop, spec.replicates, cell_seed(spec.master_seed, prevalence, quality, run),
                        spec.alpha);
                    const auto noise = estimate_noise(plan, metrics, spec.workers);
                    ResolutionReport report = resolution(result.curves[pi], noise[0], noise[1]);
                    cell.delta_runs.push_back(report.companion.delta);
                    cell.runs.push_back(std::move(report));
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("binormal sweep cell (prevalence=" +
                                         std::to_string(prevalence) + ", auroc=" +
                                         std::to_string(quality) + "): " + e.what());
            }

            double sum = 0.0;
            cell.delta_min = cell.delta_runs.front();
            cell.delta_max = cell.delta_runs.front();
            for (double d : cell.delta_runs) {
                sum += d;
                cell.delta_min = std::min(cell.delta_min, d);
                cell.delta_max = std::max(cell.delta_max, d);
            }
            cell.delta_mean = sum / static_cast<double>(cell.delta_runs.size());

            if (spec.average_ci_bounds) {
                double rl = 0.0, rh = 0.0, cl = 0.0, ch = 0.0;
                for (const auto& rep : cell.runs) {
                    rl += rep.reference.ci_low;
                    rh += rep.reference.ci_high;
                    cl += rep.companion.ci_low;
                    ch += rep.companion.ci_high;
                }
                const auto n = static_cast<double>(cell.runs.size());
                cell.bound_averaged = resolution(
                    result.curves[pi], bounds_only(MetricId::auroc, rl / n, rh / n, spec.alpha),
                    bounds_only(MetricId::auprc, cl / n, ch / n, spec.alpha));
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

EmpiricalResult run_empirical_study(const LabeledScores& data, const StudySpec& spec) {
    data.validate();
    spec.validate();

    EmpiricalResult result;
    result.spec = spec;
    result.curve = empirical_signal_curve(data, spec.grid_points, spec.target_step,
                                          spec.strategy, spec.workers);
    result.base_auroc = result.curve.base_auroc;
    result.base_auprc = result.curve.base_auprc;

    const auto plan = SamplingPlan::empirical(data, spec.replicates, spec.master_seed,
                                              spec.alpha, spec.sample_size);
    const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};
    result.noise = estimate_noise(plan, metrics, spec.workers);
    result.report = resolution(result.curve.curve, result.noise[0], result.noise[1]);
    return result;
}

} // namespace respow
