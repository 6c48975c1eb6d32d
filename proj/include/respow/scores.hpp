#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace respow {

enum class MetricId { auroc, auprc };

std::string to_string(MetricId id);
MetricId metric_from_string(const std::string& name);

struct MetricValue {
    MetricId metric;
    double value;
};

// Paired risk scores and binary outcomes (1 = positive, 0 = negative).
struct LabeledScores {
    std::vector<double> scores;
    std::vector<int> labels;

    std::size_t size() const { return scores.size(); }
    std::size_t n_pos() const;
    std::size_t n_neg() const;

    // Throws std::invalid_argument unless sizes match, n >= 2, labels are
    // 0/1 and both classes are present.
    void validate() const;
};

// One point of an ROC curve (x = fpr, y = tpr) or PR curve
// (x = recall, y = precision). threshold is the score cut that produces
// the point's confusion matrix.
struct CurvePoint {
    double x;
    double y;
    double threshold;
};

// Rank-statistic (Mann-Whitney) AUROC estimate; tied cross-class pairs
// count half. Equals exhaustive pair counting.
MetricValue auroc(const LabeledScores& data);

// Area under the PR curve with Davis-Goadrich interpolation between
// achievable confusion-matrix points, each segment integrated in closed
// form.
MetricValue auprc(const LabeledScores& data);

// Empirical ROC step curve: (0,0), one point per distinct threshold, ending
// at (1,1). Trapezoid area over the points equals auroc().
std::vector<CurvePoint> roc_curve(const LabeledScores& data);

// PR curve over achievable points, ordered by non-decreasing recall. The
// first point extends the smallest-recall achievable precision back to
// recall zero.
std::vector<CurvePoint> pr_curve(const LabeledScores& data);

// ---------------------------------------------------------------------
// Kernels over per-class score arrays sorted ascending. auroc()/auprc()
// sort and delegate here; the noise and signal grids call these directly
// on pre-sorted buffers.

double auroc_sorted(std::span<const double> pos_asc, std::span<const double> neg_asc);
double auprc_sorted(std::span<const double> pos_asc, std::span<const double> neg_asc);

namespace detail {

struct ClassSorted {
    std::vector<double> pos; // ascending
    std::vector<double> neg; // ascending
};

ClassSorted split_sorted(const LabeledScores& data);

// Cumulative confusion counts per distinct threshold, descending score.
struct ThresholdCounts {
    std::vector<double> tp;
    std::vector<double> fp;
    std::vector<double> threshold;
};

ThresholdCounts threshold_counts(std::span<const double> pos_asc,
                                 std::span<const double> neg_asc);

// Davis-Goadrich area under precision(recall) for the given cumulative
// counts, starting from the empty confusion matrix.
double dg_area(const ThresholdCounts& counts);

} // namespace detail

} // namespace respow
