#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "respow/experiment.hpp"

namespace respow {

// Shortest decimal that round-trips to the exact double. Data files use
// this so goldens are byte-stable.
std::string format_shortest(double v);

// Four significant figures for human-readable report tables.
std::string format_sig4(double v);

// Two-column quality/companion table, headed by the metric names.
void write_signal_curve_tsv(const std::filesystem::path& path, const SignalCurve& curve);

// Report table: metric, lower CI, upper CI, kappa, resolving power. Three
// rows: reference, companion raw (no kappa), companion mapped.
void write_resolution_tsv(const std::filesystem::path& path, const ResolutionReport& report);
nlohmann::ordered_json resolution_json(const ResolutionReport& report);

// Noise summaries, one row per metric.
void write_noise_tsv(const std::filesystem::path& path, std::span<const NoiseEstimate> noise);
nlohmann::ordered_json noise_json(std::span<const NoiseEstimate> noise);

// Replicate-level audit dump: metric, replicate index, value.
void write_replicates_tsv(const std::filesystem::path& path, std::span<const NoiseEstimate> noise);

// Sweep serialization: nested JSON per cell, and a flat table with one row
// per cell per run plus the cell average.
void write_sweep_tsv(const std::filesystem::path& path, const SweepResult& result);
nlohmann::ordered_json sweep_json(const SweepResult& result);

nlohmann::ordered_json empirical_json(const EmpiricalResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace respow
