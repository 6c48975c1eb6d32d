#pragma once

// Shared generators and independent oracles for the test suites. The
// oracles deliberately avoid the library's kernels: AUROC by exhaustive
// pair counting, AUPRC by unit-TP-step interpolation over its own
// threshold sweep.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "respow/rng.hpp"
#include "respow/scores.hpp"

namespace helpers {

using respow::LabeledScores;
using respow::SplitMix64;

// Random instance with one forced case per class. Ties arrive via score
// rounding to a 1/16 lattice.
inline LabeledScores random_instance(SplitMix64& rng, std::size_t n, double prevalence,
                                     bool with_ties) {
    LabeledScores data;
    data.scores.reserve(n);
    data.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        int label;
        if (i == 0) {
            label = 1;
        } else if (i == 1) {
            label = 0;
        } else {
            label = rng.next_unit() < prevalence ? 1 : 0;
        }
        double score = rng.next_unit() + 0.35 * label;
        if (with_ties) score = std::round(score * 16.0) / 16.0;
        data.scores.push_back(score);
        data.labels.push_back(label);
    }
    return data;
}

// Binormal-style instance: standard normal negatives, shifted positives.
inline LabeledScores binormal_instance(SplitMix64& rng, std::size_t n_pos, std::size_t n_neg,
                                       double delta) {
    auto gauss = [&rng] {
        // Box-Muller is fine here; tests only need a plausible shape.
        const double u1 = rng.next_unit();
        const double u2 = rng.next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    LabeledScores data;
    for (std::size_t i = 0; i < n_pos; ++i) {
        data.scores.push_back(gauss() + delta);
        data.labels.push_back(1);
    }
    for (std::size_t i = 0; i < n_neg; ++i) {
        data.scores.push_back(gauss());
        data.labels.push_back(0);
    }
    return data;
}

inline LabeledScores make_scores(std::vector<double> pos, std::vector<double> neg) {
    LabeledScores data;
    for (double s : pos) {
        data.scores.push_back(s);
        data.labels.push_back(1);
    }
    for (double s : neg) {
        data.scores.push_back(s);
        data.labels.push_back(0);
    }
    return data;
}

// Oracle: AUROC by exhaustive pair counting, ties worth one half.
inline double auroc_pair_oracle(const LabeledScores& data) {
    double wins = 0.0;
    std::size_t np = 0, nn = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] != 1) continue;
        ++np;
        nn = 0;
        for (std::size_t j = 0; j < data.size(); ++j) {
            if (data.labels[j] != 0) continue;
            ++nn;
            if (data.scores[i] > data.scores[j]) {
                wins += 1.0;
            } else if (data.scores[i] == data.scores[j]) {
                wins += 0.5;
            }
        }
    }
    return wins / (static_cast<double>(np) * static_cast<double>(nn));
}

struct SweepPoint {
    double tp, fp;
};

// Threshold sweep with tie groups, written independently of the library.
inline std::vector<SweepPoint> threshold_sweep_oracle(const LabeledScores& data) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.scores[a] > data.scores[b];
    });
    std::vector<SweepPoint> points;
    double tp = 0.0, fp = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = data.scores[order[i]];
        while (i < order.size() && data.scores[order[i]] == threshold) {
            (data.labels[order[i]] == 1 ? tp : fp) += 1.0;
            ++i;
        }
        points.push_back({tp, fp});
    }
    return points;
}

// Oracle: AUPRC with the interpolated precision evaluated at every integer
// TP count; each unit sub-segment integrated in closed form.
inline double auprc_unit_step_oracle(const LabeledScores& data) {
    const auto points = threshold_sweep_oracle(data);
    const double total_pos = points.back().tp;

    auto segment = [](double tp_a, double fp_a, double tp_b, double fp_b) {
        // integral of (tp_a + x) / ((1+m)x + tp_a + fp_a) dx over one segment
        const double s = tp_b - tp_a;
        const double a = 1.0 + (fp_b - fp_a) / s;
        const double c = tp_a + fp_a;
        if (c == 0.0) return s / a;
        return s / a + (tp_a / a - c / (a * a)) * std::log((a * s + c) / c);
    };

    double area = 0.0;
    double prev_tp = 0.0, prev_fp = 0.0;
    for (const auto& p : points) {
        const double span = p.tp - prev_tp;
        if (span > 0.0) {
            const double slope = (p.fp - prev_fp) / span;
            for (double x = 1.0; x <= span; x += 1.0) {
                const double tp_a = prev_tp + x - 1.0;
                const double tp_b = prev_tp + x;
                const double fp_a = prev_fp + (x - 1.0) * slope;
                const double fp_b = prev_fp + x * slope;
                area += segment(tp_a, fp_a, tp_b, fp_b);
            }
        }
        prev_tp = p.tp;
        prev_fp = p.fp;
    }
    return area / total_pos;
}

// Numeric check of the same interpolation: composite Simpson per segment.
inline double auprc_simpson_oracle(const LabeledScores& data, int steps_per_segment = 2048) {
    const auto points = threshold_sweep_oracle(data);
    const double total_pos = points.back().tp;

    double area = 0.0;
    double prev_tp = 0.0, prev_fp = 0.0;
    for (const auto& p : points) {
        const double span = p.tp - prev_tp;
        if (span > 0.0) {
            const double slope = (p.fp - prev_fp) / span;
            auto precision = [&](double x) {
                const double tp = prev_tp + x;
                const double fp = prev_fp + x * slope;
                return tp / (tp + fp);
            };
            const double h = span / steps_per_segment;
            double sum = 0.0;
            // skip x=0 when the segment starts at the empty matrix (0/0);
            // the integrand limit there is 1/(1+slope)
            const double f0 = (prev_tp + prev_fp == 0.0) ? 1.0 / (1.0 + slope) : precision(0.0);
            sum += f0 + precision(span);
            for (int k = 1; k < steps_per_segment; ++k) {
                sum += (k % 2 == 1 ? 4.0 : 2.0) * precision(k * h);
            }
            area += sum * h / 3.0;
        }
        prev_tp = p.tp;
        prev_fp = p.fp;
    }
    return area / total_pos;
}

inline double trapezoid_area(const std::vector<respow::CurvePoint>& pts) {
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        area += (pts[i].x - pts[i - 1].x) * 0.5 * (pts[i].y + pts[i - 1].y);
    }
    return area;
}

} // namespace helpers
