#include "respow/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace respow {

std::string format_shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_sig4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

void write_signal_curve_tsv(const std::filesystem::path& path, const SignalCurve& curve) {
    std::ostringstream out;
    out << "auroc\tauprc\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << format_shortest(curve.quality[i]) << '\t' << format_shortest(curve.companion[i])
            << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

void table_row(std::ostringstream& out, const std::string& name, double lo, double hi,
               const std::string& kappa, const std::string& rp) {
    out << name << '\t' << format_sig4(lo) << '\t' << format_sig4(hi) << '\t' << kappa << '\t'
        << rp << '\n';
}

} // namespace

void write_resolution_tsv(const std::filesystem::path& path, const ResolutionReport& report) {
    const auto& ref = report.reference;
    const auto& comp = report.companion;
    std::ostringstream out;
    out << "metric\tlower_ci\tupper_ci\tkappa\tresolving_power\n";
    table_row(out, to_string(ref.metric), ref.ci_low, ref.ci_high, format_sig4(ref.kappa),
              format_sig4(ref.resolving_power));
    table_row(out, to_string(comp.metric), comp.ci_low, comp.ci_high, "NA", "NA");
    table_row(out, to_string(comp.metric) + " to " + to_string(ref.metric), comp.q_low,
              comp.q_high, format_sig4(comp.kappa), format_sig4(comp.resolving_power));
    write_text_file(path, out.str());
}

namespace {

nlohmann::ordered_json metric_resolution_json(const MetricResolution& r) {
    return {{"metric", to_string(r.metric)},
            {"ci_low", r.ci_low},
            {"ci_high", r.ci_high},
            {"mapped_ci_low", r.q_low},
            {"mapped_ci_high", r.q_high},
            {"kappa", r.kappa},
            {"resolving_power", r.resolving_power},
            {"delta", r.delta}};
}

} // namespace

nlohmann::ordered_json resolution_json(const ResolutionReport& report) {
    return {{"reference", metric_resolution_json(report.reference)},
            {"companion", metric_resolution_json(report.companion)},
            {"delta", report.companion.delta}};
}

void write_noise_tsv(const std::filesystem::path& path, std::span<const NoiseEstimate> noise) {
    std::ostringstream out;
    out << "metric\tci_low\tci_high\tstd_error\treplicates\talpha\n";
    for (const auto& est : noise) {
        out << to_string(est.metric) << '\t' << format_shortest(est.ci_low) << '\t'
            << format_shortest(est.ci_high) << '\t' << format_shortest(est.std_error) << '\t'
            << est.replicate_values.size() << '\t' << format_shortest(est.alpha) << '\n';
    }
    write_text_file(path, out.str());
}

nlohmann::ordered_json noise_json(std::span<const NoiseEstimate> noise) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& est : noise) {
        arr.push_back({{"metric", to_string(est.metric)},
                       {"ci_low", est.ci_low},
                       {"ci_high", est.ci_high},
                       {"std_error", est.std_error},
                       {"replicates", est.replicate_values.size()},
                       {"alpha", est.alpha}});
    }
    return arr;
}

void write_replicates_tsv(const std::filesystem::path& path,
                          std::span<const NoiseEstimate> noise) {
    std::ostringstream out;
    out << "metric\treplicate\tvalue\n";
    for (const auto& est : noise) {
        for (std::size_t r = 0; r < est.replicate_values.size(); ++r) {
            out << to_string(est.metric) << '\t' << r << '\t'
                << format_shortest(est.replicate_values[r]) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void write_sweep_tsv(const std::filesystem::path& path, const SweepResult& result) {
    std::ostringstream out;
    out << "prevalence\tauroc\trun\tdelta\tdelta_mean\tkappa_ref\tkappa_comp\t"
           "ref_ci_low\tref_ci_high\tcomp_ci_low\tcomp_ci_high\tmapped_low\tmapped_high\n";
    for (const auto& cell : result.cells) {
        for (std::size_t run = 0; run < cell.runs.size(); ++run) {
            const auto& rep = cell.runs[run];
            out << format_shortest(cell.prevalence) << '\t' << format_shortest(cell.quality)
                << '\t' << run << '\t' << format_shortest(cell.delta_runs[run]) << '\t'
                << format_shortest(cell.delta_mean) << '\t'
                << format_shortest(rep.reference.kappa) << '\t'
                << format_shortest(rep.companion.kappa) << '\t'
                << format_shortest(rep.reference.ci_low) << '\t'
                << format_shortest(rep.reference.ci_high) << '\t'
                << format_shortest(rep.companion.ci_low) << '\t'
                << format_shortest(rep.companion.ci_high) << '\t'
                << format_shortest(rep.companion.q_low) << '\t'
                << format_shortest(rep.companion.q_high) << '\n';
        }
    }
    write_text_file(path, out.str());
}

nlohmann::ordered_json sweep_json(const SweepResult& result) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : result.cells) {
        nlohmann::ordered_json runs = nlohmann::ordered_json::array();
        for (const auto& rep : cell.runs) runs.push_back(resolution_json(rep));
        nlohmann::ordered_json c = {{"prevalence", cell.prevalence},
                                    {"auroc", cell.quality},
                                    {"delta_mean", cell.delta_mean},
                                    {"delta_min", cell.delta_min},
                                    {"delta_max", cell.delta_max},
                                    {"delta_runs", cell.delta_runs},
                                    {"runs", runs}};
        if (cell.bound_averaged) {
            c["bound_averaged"] = resolution_json(*cell.bound_averaged);
        }
        cells.push_back(std::move(c));
    }
    return {{"kind", "binormal_sweep"},
            {"sample_size", result.spec.sample_size},
            {"replicates", result.spec.replicates},
            {"repeats", result.spec.repeats},
            {"grid_step", result.spec.grid_step},
            {"alpha", result.spec.alpha},
            {"seed", result.spec.master_seed},
            {"cells", cells}};
}

nlohmann::ordered_json empirical_json(const EmpiricalResult& result) {
    const auto& grid = result.curve.grid;
    return {{"kind", "empirical_study"},
            {"baseline", {{"auroc", result.base_auroc}, {"auprc", result.base_auprc}}},
            {"strategy", to_string(result.spec.strategy)},
            {"grid_points", grid.auroc.size()},
            {"auroc_range", {grid.auroc.front(), grid.auroc.back()}},
            {"auprc_range", {grid.auprc.front(), grid.auprc.back()}},
            {"replicates", result.spec.replicates},
            {"alpha", result.spec.alpha},
            {"seed", result.spec.master_seed},
            {"noise", noise_json(result.noise)},
            {"report", resolution_json(result.report)}};
}

} // namespace respow
