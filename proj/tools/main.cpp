#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "respow/experiment.hpp"
#include "respow/report_io.hpp"
#include "respow/score_file.hpp"

namespace fs = std::filesystem;
using namespace respow;

namespace {

// Exit codes: 0 success, 2 usage, 3 score-file parse, 4 numeric domain /
// validation, 5 other runtime failures.
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitDomain = 4;
constexpr int kExitRuntime = 5;

CLI::Validator open_interval(double lo, double hi, const std::string& label) {
    return CLI::Validator(
        [lo, hi, label](std::string& s) -> std::string {
            try {
                const double v = std::stod(s);
                if (v > lo && v < hi) return {};
            } catch (...) {
            }
            return "value must lie in " + label;
        },
        label);
}

CLI::Validator auroc_range() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                const double v = std::stod(s);
                if (v >= 0.5 && v < 1.0) return {};
            } catch (...) {
            }
            return "value must lie in [0.5, 1)";
        },
        "[0.5,1)");
}

struct CommonOpts {
    std::uint64_t seed = 0;
    int workers = 0;
    double alpha = 0.05;
    std::string format = "both";
    std::string out = ".";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "master RNG seed");
    cmd->add_option("--workers", opts.workers, "OpenMP threads (0 = all); never changes results")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha", opts.alpha, "CI mass outside the interval")
        ->check(open_interval(0.0, 1.0, "(0,1)"));
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "tsv", "both"}));
    cmd->add_option("--out", opts.out, "output directory");
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

void emit_resolution(const fs::path& dir, const std::string& format,
                     const ResolutionReport& report) {
    if (format != "json") write_resolution_tsv(dir / "resolution.tsv", report);
    if (format != "tsv") write_text_file(dir / "resolution.json", resolution_json(report).dump(2) + "\n");
}

void print_resolution(const ResolutionReport& report) {
    const auto& ref = report.reference;
    const auto& comp = report.companion;
    std::cout << "metric\tlower_ci\tupper_ci\tkappa\tresolving_power\n"
              << to_string(ref.metric) << '\t' << format_sig4(ref.ci_low) << '\t'
              << format_sig4(ref.ci_high) << '\t' << format_sig4(ref.kappa) << '\t'
              << format_sig4(ref.resolving_power) << '\n'
              << to_string(comp.metric) << '\t' << format_sig4(comp.ci_low) << '\t'
              << format_sig4(comp.ci_high) << "\tNA\tNA\n"
              << to_string(comp.metric) << " to " << to_string(ref.metric) << '\t'
              << format_sig4(comp.q_low) << '\t' << format_sig4(comp.q_high) << '\t'
              << format_sig4(comp.kappa) << '\t' << format_sig4(comp.resolving_power) << '\n'
              << "delta\t" << format_sig4(comp.delta) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signal-to-noise comparison of threshold-free classifier metrics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    // binormal-curve ----------------------------------------------------
    auto* curve_cmd = app.add_subcommand(
        "binormal-curve", "AUROC-to-AUPRC signal curve of the binormal model");
    struct {
        double prevalence = 0.5;
        double grid_step = 5e-4;
        double max_auroc = 0.99995;
        CommonOpts common;
    } curve_opts;
    curve_cmd->add_option("--prevalence", curve_opts.prevalence, "outcome prevalence")
        ->required()
        ->check(open_interval(0.0, 1.0, "(0,1)"));
    curve_cmd->add_option("--grid-step", curve_opts.grid_step, "AUROC spacing of the grid")
        ->check(open_interval(0.0, 0.5, "(0,0.5)"));
    curve_cmd->add_option("--max-auroc", curve_opts.max_auroc, "upper end of the grid")
        ->check(open_interval(0.5, 1.0, "(0.5,1)"));
    add_common(curve_cmd, curve_opts.common);
    curve_cmd->callback([&] {
        const QualityGrid grid{0.5, curve_opts.max_auroc, curve_opts.grid_step};
        const SignalCurve curve =
            binormal_signal_curve(curve_opts.prevalence, grid, curve_opts.common.workers);
        const fs::path dir = ensure_out_dir(curve_opts.common.out);
        write_signal_curve_tsv(dir / "signal_curve.tsv", curve);
        std::cout << "wrote " << (dir / "signal_curve.tsv").string() << " (" << curve.size()
                  << " points)\n";
    });

    // binormal-sweep ----------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "binormal-sweep", "prevalence x quality study of AUROC vs AUPRC resolution");
    struct {
        std::vector<double> prevalences;
        std::vector<double> qualities;
        long n = 10000;
        int replicates = 2000;
        int repeats = 1;
        double grid_step = 5e-4;
        double max_auroc = 0.99995;
        bool average_ci_bounds = false;
        CommonOpts common;
    } sweep_opts;
    sweep_cmd->add_option("--prevalence", sweep_opts.prevalences, "prevalence levels")
        ->check(open_interval(0.0, 1.0, "(0,1)"));
    sweep_cmd->add_option("--auroc", sweep_opts.qualities, "quality points")
        ->check(open_interval(0.5, 1.0, "(0.5,1)"));
    sweep_cmd->add_option("--n", sweep_opts.n, "sample size per replicate")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--replicates", sweep_opts.replicates, "Monte Carlo replicates per cell")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--repeats", sweep_opts.repeats, "independent runs averaged per cell")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--grid-step", sweep_opts.grid_step, "signal-curve AUROC spacing")
        ->check(open_interval(0.0, 0.5, "(0,0.5)"));
    sweep_cmd->add_option("--max-auroc", sweep_opts.max_auroc, "upper end of the curve grid")
        ->check(open_interval(0.5, 1.0, "(0.5,1)"));
    sweep_cmd->add_flag("--average-ci-bounds", sweep_opts.average_ci_bounds,
                        "also report run-averaged CI bounds per cell");
    add_common(sweep_cmd, sweep_opts.common);
    sweep_cmd->callback([&] {
        StudySpec spec;
        if (!sweep_opts.prevalences.empty()) spec.prevalences = sweep_opts.prevalences;
        if (!sweep_opts.qualities.empty()) spec.quality_points = sweep_opts.qualities;
        spec.sample_size = sweep_opts.n;
        spec.replicates = sweep_opts.replicates;
        spec.repeats = sweep_opts.repeats;
        spec.grid_step = sweep_opts.grid_step;
        spec.max_auroc = sweep_opts.max_auroc;
        spec.alpha = sweep_opts.common.alpha;
        spec.master_seed = sweep_opts.common.seed;
        spec.average_ci_bounds = sweep_opts.average_ci_bounds;
        spec.workers = sweep_opts.common.workers;

        const SweepResult result = run_binormal_sweep(spec);
        const fs::path dir = ensure_out_dir(sweep_opts.common.out);
        const std::string& format = sweep_opts.common.format;
        if (format != "json") write_sweep_tsv(dir / "sweep.tsv", result);
        if (format != "tsv") write_text_file(dir / "sweep.json", sweep_json(result).dump(2) + "\n");
        std::cout << "prevalence\tauroc\tdelta_mean\n";
        for (const auto& cell : result.cells) {
            std::cout << format_shortest(cell.prevalence) << '\t'
                      << format_shortest(cell.quality) << '\t' << format_sig4(cell.delta_mean)
                      << '\n';
        }
    });

    // empirical ----------------------------------------------------------
    auto* emp_cmd = app.add_subcommand(
        "empirical", "shift-grid study of a score file (curve, noise, resolution report)");
    struct {
        std::string scores_path;
        long n = 0; // 0 = pool size
        int replicates = 2000;
        int grid_points = 1000;
        double grid_step = 1e-3;
        std::string strategy = "additive";
        bool dump_replicates = false;
        CommonOpts common;
    } emp_opts;
    emp_cmd->add_option("scores", emp_opts.scores_path, "score file (header 'score,label')")
        ->required();
    emp_cmd->add_option("--n", emp_opts.n, "resample size (0 = pool size)")
        ->check(CLI::NonNegativeNumber);
    emp_cmd->add_option("--replicates", emp_opts.replicates, "Monte Carlo replicates")
        ->check(CLI::PositiveNumber);
    emp_cmd->add_option("--grid-points", emp_opts.grid_points, "points on the shift grid")
        ->check(CLI::PositiveNumber);
    emp_cmd->add_option("--grid-step", emp_opts.grid_step,
                        "target AUROC change of the initial shift increment")
        ->check(open_interval(0.0, 0.5, "(0,0.5)"));
    emp_cmd->add_option("--strategy", emp_opts.strategy, "improvement mechanism")
        ->check(CLI::IsMember({"additive", "top-first", "bottom-first"}));
    emp_cmd->add_flag("--dump-replicates", emp_opts.dump_replicates,
                      "write replicate-level metric values");
    add_common(emp_cmd, emp_opts.common);
    emp_cmd->callback([&] {
        const LabeledScores data = read_score_file(emp_opts.scores_path);
        StudySpec spec;
        spec.sample_size = emp_opts.n;
        spec.replicates = emp_opts.replicates;
        spec.grid_points = emp_opts.grid_points;
        spec.target_step = emp_opts.grid_step;
        spec.strategy = strategy_from_string(emp_opts.strategy);
        spec.alpha = emp_opts.common.alpha;
        spec.master_seed = emp_opts.common.seed;
        spec.workers = emp_opts.common.workers;

        const EmpiricalResult result = run_empirical_study(data, spec);
        const fs::path dir = ensure_out_dir(emp_opts.common.out);
        const std::string& format = emp_opts.common.format;
        write_signal_curve_tsv(dir / "signal_curve.tsv", result.curve.curve);
        write_noise_tsv(dir / "noise.tsv", result.noise);
        emit_resolution(dir, format, result.report);
        if (format != "tsv") {
            write_text_file(dir / "empirical.json", empirical_json(result).dump(2) + "\n");
        }
        if (emp_opts.dump_replicates) write_replicates_tsv(dir / "replicates.tsv", result.noise);
        std::cout << "baseline AUROC " << format_sig4(result.base_auroc) << ", AUPRC "
                  << format_sig4(result.base_auprc) << "\n";
        print_resolution(result.report);
    });

    // simulate -------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo noise estimate only (binormal or empirical population)");
    struct {
        std::string scores_path;
        double auroc = 0.0;
        double prevalence = 0.0;
        long n = 0; // 0: pool size for --scores, 10000 for binormal
        int replicates = 2000;
        bool dump_replicates = false;
        CommonOpts common;
    } sim_opts;
    auto* sim_scores = sim_cmd->add_option("--scores", sim_opts.scores_path,
                                           "empirical population score file");
    auto* sim_auroc =
        sim_cmd->add_option("--auroc", sim_opts.auroc, "binormal population AUROC")
            ->check(auroc_range());
    sim_cmd->add_option("--prevalence", sim_opts.prevalence, "binormal outcome prevalence")
        ->check(open_interval(0.0, 1.0, "(0,1)"))
        ->needs(sim_auroc);
    sim_cmd->add_option("--n", sim_opts.n, "sample size per replicate (0 = pool size)")
        ->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--replicates", sim_opts.replicates, "Monte Carlo replicates")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_flag("--dump-replicates", sim_opts.dump_replicates,
                      "write replicate-level metric values");
    sim_auroc->excludes(sim_scores);
    add_common(sim_cmd, sim_opts.common);
    sim_cmd->callback([&] {
        SamplingPlan plan;
        if (!sim_opts.scores_path.empty()) {
            plan = SamplingPlan::empirical(read_score_file(sim_opts.scores_path),
                                           sim_opts.replicates, sim_opts.common.seed,
                                           sim_opts.common.alpha, sim_opts.n);
        } else if (sim_cmd->count("--auroc") > 0 && sim_cmd->count("--prevalence") > 0) {
            const PopulationSpec pop{BinormalModel::standardized(shift_for_auroc(sim_opts.auroc)),
                                     sim_opts.prevalence, sim_opts.n > 0 ? sim_opts.n : 10000};
            plan = SamplingPlan::binormal(pop, sim_opts.replicates, sim_opts.common.seed,
                                          sim_opts.common.alpha);
        } else {
            throw CLI::ValidationError(
                "simulate", "either --scores or both --auroc and --prevalence are required");
        }
        const MetricId metrics[] = {MetricId::auroc, MetricId::auprc};
        const auto noise = estimate_noise(plan, metrics, sim_opts.common.workers);
        const fs::path dir = ensure_out_dir(sim_opts.common.out);
        const std::string& format = sim_opts.common.format;
        if (format != "json") write_noise_tsv(dir / "noise.tsv", noise);
        if (format != "tsv") write_text_file(dir / "noise.json", noise_json(noise).dump(2) + "\n");
        if (sim_opts.dump_replicates) write_replicates_tsv(dir / "replicates.tsv", noise);
        for (const auto& est : noise) {
            std::cout << to_string(est.metric) << " CI [" << format_sig4(est.ci_low) << ", "
                      << format_sig4(est.ci_high) << "], SE " << format_sig4(est.std_error)
                      << "\n";
        }
    });

    // se ------------------------------------------------------------------
    auto* se_cmd = app.add_subcommand(
        "se", "Hanley-McNeil standard error and normal-approximation CI for an AUROC");
    struct {
        double auroc = 0.0;
        long n_pos = 0;
        long n_neg = 0;
    } se_opts;
    se_cmd->add_option("auroc", se_opts.auroc, "AUROC estimate")->required()->check(auroc_range());
    se_cmd->add_option("n_pos", se_opts.n_pos, "positive cases")
        ->required()
        ->check(CLI::PositiveNumber);
    se_cmd->add_option("n_neg", se_opts.n_neg, "negative cases")
        ->required()
        ->check(CLI::PositiveNumber);
    se_cmd->callback([&] {
        const double se = hanley_mcneil_se(se_opts.auroc, se_opts.n_pos, se_opts.n_neg);
        std::cout << "SE " << format_sig4(se) << "\n95% CI ["
                  << format_sig4(se_opts.auroc - 1.96 * se) << ", "
                  << format_sig4(se_opts.auroc + 1.96 * se) << "]\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ScoreFileError& e) {
        std::cerr << "score file error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::out_of_range& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
