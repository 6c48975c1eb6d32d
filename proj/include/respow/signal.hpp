#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "respow/curve.hpp"
#include "respow/scores.hpp"

namespace respow {

// How the improving-model sequence separates the class scores:
//   additive_shift          — add a fixed increment to all positive scores
//   top_first               — resolve out-of-order pairs from the highest
//                             ranks downward (strongest early-retrieval gain)
//   bottom_first            — resolve from the lowest ranks upward
enum class ImprovementStrategy { additive_shift, top_first, bottom_first };

std::string to_string(ImprovementStrategy s);
ImprovementStrategy strategy_from_string(const std::string& name);

// Smallest positive score difference of an out-of-order pair (a negative
// ranked above a positive). Throws std::domain_error when no such pair
// exists (perfect ranking).
double min_out_of_order_gap(const LabeledScores& data);

// k-th smallest out-of-order gap, k >= 1. Exact order statistic.
double kth_out_of_order_gap(const LabeledScores& data, std::size_t k);

// Total number of strictly out-of-order (positive below negative) pairs.
std::size_t out_of_order_pair_count(const LabeledScores& data);

// Shift that resolves exactly the pairs with gap <= k-th smallest gap:
// the midpoint between the k-th gap and the next distinct gap (half the
// smallest gap past the last one). With distinct gaps and no cross-class
// ties this raises AUROC by exactly k/(n_pos*n_neg).
double resolving_shift(const LabeledScores& data, std::size_t k);

// Positive-class scores increased by delta; negatives and labels unchanged.
LabeledScores shifted_scores(const LabeledScores& data, double delta);

// Grid bookkeeping for an empirical signal curve. increments holds the
// cumulative perturbation per point: score units under additive_shift,
// resolved-pair counts under the pair strategies.
struct ShiftGrid {
    std::vector<double> increments;
    std::vector<double> auroc;
    std::vector<double> auprc;
};

struct EmpiricalCurve {
    SignalCurve curve;
    ShiftGrid grid;
    double base_auroc = 0.0;
    double base_auprc = 0.0;
};

// Builds the shift-grid signal curve around the sample's baseline point.
// The per-step increment is chosen once from the baseline gap ordering so
// the first step moves AUROC by about target_step, then held fixed. The
// grid extends (n_points-1)/2 points below the baseline and the rest
// above; points outside [0.5, 1] are truncated and exact duplicates
// collapsed. Grid points evaluate independently across `workers` threads.
EmpiricalCurve empirical_signal_curve(
    const LabeledScores& data, int n_points, double target_step,
    ImprovementStrategy strategy = ImprovementStrategy::additive_shift,
    int workers = 0);

// Inverse interpolation of the curve (monotone piecewise-linear):
// companion value -> quality value. Plateaus in companion collapse to
// their midpoint quality. Throws std::out_of_range outside the companion
// range; there is no extrapolation.
double map_to_quality(const SignalCurve& curve, double companion_value);

} // namespace respow
