#include "respow/scores.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace respow {

std::string to_string(MetricId id) {
    switch (id) {
        case MetricId::auroc: return "AUROC";
        case MetricId::auprc: return "AUPRC";
    }
    return "unknown";
}

MetricId metric_from_string(const std::string& name) {
    if (name == "AUROC" || name == "auroc") return MetricId::auroc;
    if (name == "AUPRC" || name == "auprc") return MetricId::auprc;
    throw std::invalid_argument("unknown metric id: " + name);
}

std::size_t LabeledScores::n_pos() const {
    std::size_t n = 0;
    for (int l : labels) n += (l == 1);
    return n;
}

std::size_t LabeledScores::n_neg() const { return labels.size() - n_pos(); }

void LabeledScores::validate() const {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("LabeledScores: scores and labels differ in length");
    }
    if (scores.size() < 2) {
        throw std::invalid_argument("LabeledScores: need at least two cases");
    }
    std::size_t pos = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) throw std::invalid_argument("LabeledScores: labels must be 0 or 1");
        pos += static_cast<std::size_t>(l);
    }
    if (pos == 0 || pos == labels.size()) {
        throw std::invalid_argument("LabeledScores: both classes must be present");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) throw std::invalid_argument("LabeledScores: scores must be finite");
    }
}

namespace detail {

ClassSorted split_sorted(const LabeledScores& data) {
    ClassSorted out;
    out.pos.reserve(data.size());
    out.neg.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] == 1 ? out.pos : out.neg).push_back(data.scores[i]);
    }
    std::sort(out.pos.begin(), out.pos.end());
    std::sort(out.neg.begin(), out.neg.end());
    return out;
}

ThresholdCounts threshold_counts(std::span<const double> pos_asc,
                                 std::span<const double> neg_asc) {
    ThresholdCounts out;
    std::size_t i = pos_asc.size();
    std::size_t j = neg_asc.size();
    double tp = 0.0, fp = 0.0;
    while (i > 0 || j > 0) {
        double t = -std::numeric_limits<double>::infinity();
        if (i > 0) t = pos_asc[i - 1];
        if (j > 0 && neg_asc[j - 1] > t) t = neg_asc[j - 1];
        // all cases tied at this score cross the threshold together
        while (i > 0 && pos_asc[i - 1] == t) { --i; tp += 1.0; }
        while (j > 0 && neg_asc[j - 1] == t) { --j; fp += 1.0; }
        out.tp.push_back(tp);
        out.fp.push_back(fp);
        out.threshold.push_back(t);
    }
    return out;
}

double dg_area(const ThresholdCounts& counts) {
    const double total_pos = counts.tp.back();
    double area = 0.0;
    double prev_tp = 0.0, prev_fp = 0.0;
    for (std::size_t k = 0; k < counts.tp.size(); ++k) {
        const double s = counts.tp[k] - prev_tp;
        if (s > 0.0) {
            // precision along the segment: (prev_tp + x) / (a*x + c)
            const double a = 1.0 + (counts.fp[k] - prev_fp) / s;
            const double c = prev_tp + prev_fp;
            if (c == 0.0) {
                area += s / a;
            } else {
                area += s / a + (prev_tp / a - c / (a * a)) * std::log1p(a * s / c);
            }
        }
        prev_tp = counts.tp[k];
        prev_fp = counts.fp[k];
    }
    return area / total_pos;
}

} // namespace detail

double auroc_sorted(std::span<const double> pos_asc, std::span<const double> neg_asc) {
    if (pos_asc.empty() || neg_asc.empty()) {
        throw std::domain_error("auroc: undefined for single-class data");
    }
    // sum over positives of negatives strictly below plus half the ties
    double sum = 0.0;
    std::size_t lo = 0, hi = 0;
    for (double p : pos_asc) {
        while (lo < neg_asc.size() && neg_asc[lo] < p) ++lo;
        if (hi < lo) hi = lo;
        while (hi < neg_asc.size() && neg_asc[hi] <= p) ++hi;
        sum += static_cast<double>(lo) + 0.5 * static_cast<double>(hi - lo);
    }
    return sum / (static_cast<double>(pos_asc.size()) * static_cast<double>(neg_asc.size()));
}

double auprc_sorted(std::span<const double> pos_asc, std::span<const double> neg_asc) {
    if (pos_asc.empty() || neg_asc.empty()) {
        throw std::domain_error("auprc: undefined for single-class data");
    }
    return detail::dg_area(detail::threshold_counts(pos_asc, neg_asc));
}

MetricValue auroc(const LabeledScores& data) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    return {MetricId::auroc, auroc_sorted(cs.pos, cs.neg)};
}

MetricValue auprc(const LabeledScores& data) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    return {MetricId::auprc, auprc_sorted(cs.pos, cs.neg)};
}

std::vector<CurvePoint> roc_curve(const LabeledScores& data) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    const auto counts = detail::threshold_counts(cs.pos, cs.neg);
    const double np = static_cast<double>(cs.pos.size());
    const double nn = static_cast<double>(cs.neg.size());

    std::vector<CurvePoint> points;
    points.reserve(counts.tp.size() + 1);
    points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    for (std::size_t k = 0; k < counts.tp.size(); ++k) {
        points.push_back({counts.fp[k] / nn, counts.tp[k] / np, counts.threshold[k]});
    }
    return points;
}

std::vector<CurvePoint> pr_curve(const LabeledScores& data) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    const auto counts = detail::threshold_counts(cs.pos, cs.neg);
    const double total_pos = counts.tp.back();

    std::vector<CurvePoint> points;
    points.reserve(counts.tp.size() + 1);
    // smallest-recall achievable precision, extended back to recall zero
    const double p0 = counts.tp[0] > 0.0 ? counts.tp[0] / (counts.tp[0] + counts.fp[0]) : 0.0;
    points.push_back({0.0, p0, std::numeric_limits<double>::infinity()});
    for (std::size_t k = 0; k < counts.tp.size(); ++k) {
        const double tp = counts.tp[k];
        const double fp = counts.fp[k];
        points.push_back({tp / total_pos, tp / (tp + fp), counts.threshold[k]});
    }
    return points;
}

} // namespace respow
