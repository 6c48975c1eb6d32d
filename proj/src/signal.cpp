#include "respow/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace respow {

void SignalCurve::validate() const {
    if (quality.size() != companion.size() || quality.empty()) {
        throw std::invalid_argument("SignalCurve: quality/companion must be non-empty and equal length");
    }
    for (std::size_t i = 0; i < quality.size(); ++i) {
        if (!(quality[i] >= 0.0 && quality[i] <= 1.0) ||
            !(companion[i] >= 0.0 && companion[i] <= 1.0)) {
            throw std::invalid_argument("SignalCurve: values must lie in [0,1]");
        }
        if (i > 0 && !(quality[i] > quality[i - 1])) {
            throw std::invalid_argument("SignalCurve: quality must be strictly increasing");
        }
        if (i > 0 && companion[i] < companion[i - 1]) {
            throw std::invalid_argument("SignalCurve: companion must be non-decreasing");
        }
    }
}

std::string to_string(ImprovementStrategy s) {
    switch (s) {
        case ImprovementStrategy::additive_shift: return "additive";
        case ImprovementStrategy::top_first: return "top-first";
        case ImprovementStrategy::bottom_first: return "bottom-first";
    }
    return "unknown";
}

ImprovementStrategy strategy_from_string(const std::string& name) {
    if (name == "additive" || name == "additive_shift") return ImprovementStrategy::additive_shift;
    if (name == "top-first" || name == "top_first") return ImprovementStrategy::top_first;
    if (name == "bottom-first" || name == "bottom_first") return ImprovementStrategy::bottom_first;
    throw std::invalid_argument("unknown improvement strategy: " + name);
}

namespace {

// Number of (a, b) pairs with 0 < b - a <= g, both arrays ascending.
// Monotone two-pointer sweep, O(|A| + |B|).
std::size_t pairs_gap_leq(std::span<const double> a_asc, std::span<const double> b_asc, double g) {
    if (!(g > 0.0)) return 0;
    std::size_t count = 0, lo = 0, hi = 0;
    for (double b : b_asc) {
        while (hi < a_asc.size() && a_asc[hi] < b) ++hi;
        while (lo < a_asc.size() && a_asc[lo] < b - g) ++lo;
        count += hi - lo;
    }
    return count;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact k-th smallest positive gap b - a. Bisects the bit representation,
// which is order-preserving for non-negative doubles, so it lands exactly
// on an attained gap value.
double kth_gap(std::span<const double> a_asc, std::span<const double> b_asc, std::size_t k,
               std::size_t total) {
    if (k < 1 || k > total) throw std::domain_error("kth_gap: fewer improvable pairs than k");
    const double gmax = b_asc.back() - a_asc.front();
    std::uint64_t lo = 0; // gap 0 counts no pairs
    std::uint64_t hi = std::bit_cast<std::uint64_t>(gmax);
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (pairs_gap_leq(a_asc, b_asc, std::bit_cast<double>(mid)) >= k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return std::bit_cast<double>(hi);
}

// Shift that resolves exactly the pairs at or below the k-th gap: the
// midpoint to the next distinct gap, or half the smallest gap beyond the
// largest one.
double resolving_shift_sorted(std::span<const double> a_asc, std::span<const double> b_asc,
                              std::size_t k) {
    const std::size_t total = pairs_gap_leq(a_asc, b_asc, kInf);
    const double gap_k = kth_gap(a_asc, b_asc, k, total);
    const std::size_t resolved = pairs_gap_leq(a_asc, b_asc, gap_k);
    double shift;
    if (resolved < total) {
        const double gap_next = kth_gap(a_asc, b_asc, resolved + 1, total);
        shift = gap_k + 0.5 * (gap_next - gap_k);
        if (shift <= gap_k) shift = std::nextafter(gap_k, kInf);
    } else {
        shift = gap_k + 0.5 * kth_gap(a_asc, b_asc, 1, total);
    }
    return shift;
}

struct DirectionStep {
    bool available = false;
    double shift = 0.0; // per grid step, positive
};

DirectionStep direction_step(std::span<const double> a_asc, std::span<const double> b_asc,
                             std::size_t k_target) {
    const std::size_t total = pairs_gap_leq(a_asc, b_asc, kInf);
    if (total == 0) return {};
    const std::size_t k = std::clamp<std::size_t>(k_target, 1, total);
    return {true, resolving_shift_sorted(a_asc, b_asc, k)};
}

struct GridPoint {
    double increment;
    double auroc;
    double auprc;
};

// ---- pair-resolution strategies ------------------------------------

// seq: labels in descending score order, 1 = positive.
double auroc_from_sequence(const std::vector<std::uint8_t>& seq, double np, double nn) {
    double concordant = 0.0, neg_below = 0.0;
    for (std::size_t i = seq.size(); i-- > 0;) {
        if (seq[i] == 0) {
            neg_below += 1.0;
        } else {
            concordant += neg_below;
        }
    }
    return concordant / (np * nn);
}

double auprc_from_sequence(const std::vector<std::uint8_t>& seq) {
    detail::ThresholdCounts counts;
    counts.tp.reserve(seq.size());
    counts.fp.reserve(seq.size());
    double tp = 0.0, fp = 0.0;
    for (std::uint8_t l : seq) {
        (l == 1 ? tp : fp) += 1.0;
        counts.tp.push_back(tp);
        counts.fp.push_back(fp);
    }
    return detail::dg_area(counts);
}

// One adjacent swap per resolved pair. improving=true turns (neg, pos)
// adjacencies into (pos, neg); false does the reverse. from_top picks the
// highest-ranked candidate, otherwise the lowest. Returns swaps performed
// (may stop short when no candidates remain).
std::size_t apply_swaps(std::vector<std::uint8_t>& seq, std::size_t k, bool improving,
                        bool from_top) {
    const std::uint8_t first = improving ? 0 : 1;
    const std::uint8_t second = improving ? 1 : 0;
    std::size_t done = 0;
    if (seq.size() < 2) return 0;
    if (from_top) {
        std::size_t i = 0;
        while (done < k) {
            while (i + 1 < seq.size() && !(seq[i] == first && seq[i + 1] == second)) ++i;
            if (i + 1 >= seq.size()) break;
            std::swap(seq[i], seq[i + 1]);
            ++done;
            if (i > 0) --i;
        }
    } else {
        std::size_t i = seq.size() - 2;
        while (done < k) {
            while (!(seq[i] == first && seq[i + 1] == second)) {
                if (i == 0) return done;
                --i;
            }
            std::swap(seq[i], seq[i + 1]);
            ++done;
            if (i + 2 < seq.size()) ++i;
        }
    }
    return done;
}

std::vector<std::uint8_t> descending_label_sequence(const LabeledScores& data) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.scores[a] > data.scores[b];
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (data.scores[order[i - 1]] == data.scores[order[i]]) {
            throw std::invalid_argument(
                "pair-resolution strategies require unique scores (tie found)");
        }
    }
    std::vector<std::uint8_t> seq(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        seq[i] = static_cast<std::uint8_t>(data.labels[order[i]]);
    }
    return seq;
}

} // namespace

double min_out_of_order_gap(const LabeledScores& data) {
    return kth_out_of_order_gap(data, 1);
}

double kth_out_of_order_gap(const LabeledScores& data, std::size_t k) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    const std::size_t total = pairs_gap_leq(cs.pos, cs.neg, kInf);
    if (total == 0) {
        throw std::domain_error("no improvable pair: every positive outranks every negative");
    }
    return kth_gap(cs.pos, cs.neg, k, total);
}

std::size_t out_of_order_pair_count(const LabeledScores& data) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    return pairs_gap_leq(cs.pos, cs.neg, kInf);
}

double resolving_shift(const LabeledScores& data, std::size_t k) {
    data.validate();
    const auto cs = detail::split_sorted(data);
    const std::size_t total = pairs_gap_leq(cs.pos, cs.neg, kInf);
    if (total == 0) {
        throw std::domain_error("no improvable pair: every positive outranks every negative");
    }
    if (k < 1 || k > total) throw std::domain_error("resolving_shift: k out of range");
    return resolving_shift_sorted(cs.pos, cs.neg, k);
}

LabeledScores shifted_scores(const LabeledScores& data, double delta) {
    LabeledScores out = data;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.labels[i] == 1) out.scores[i] += delta;
    }
    return out;
}

EmpiricalCurve empirical_signal_curve(const LabeledScores& data, int n_points,
                                      double target_step, ImprovementStrategy strategy,
                                      int workers) {
    data.validate();
    if (n_points < 1) throw std::invalid_argument("empirical_signal_curve: n_points must be >= 1");
    if (!(target_step > 0.0 && target_step < 0.5)) {
        throw std::domain_error("empirical_signal_curve: target_step must lie in (0, 0.5)");
    }

    const auto cs = detail::split_sorted(data);
    const double np = static_cast<double>(cs.pos.size());
    const double nn = static_cast<double>(cs.neg.size());
    EmpiricalCurve out;
    out.base_auroc = auroc_sorted(cs.pos, cs.neg);
    out.base_auprc = auprc_sorted(cs.pos, cs.neg);

    std::size_t down_count = static_cast<std::size_t>((n_points - 1) / 2);
    std::size_t up_count = static_cast<std::size_t>(n_points - 1) - down_count;
    const auto k_target =
        static_cast<std::size_t>(std::max<long long>(1, std::llround(target_step * np * nn)));

    std::vector<GridPoint> points;
    points.reserve(static_cast<std::size_t>(n_points));

    if (strategy == ImprovementStrategy::additive_shift) {
        const DirectionStep up = direction_step(cs.pos, cs.neg, k_target);
        const DirectionStep dn = direction_step(cs.neg, cs.pos, k_target);
        if (!up.available) up_count = 0;
        if (!dn.available) down_count = 0;

        std::vector<double> deltas;
        deltas.reserve(down_count + up_count + 1);
        for (std::size_t i = down_count; i >= 1; --i) {
            deltas.push_back(-static_cast<double>(i) * dn.shift);
        }
        deltas.push_back(0.0);
        for (std::size_t i = 1; i <= up_count; ++i) {
            deltas.push_back(static_cast<double>(i) * up.shift);
        }

        points.resize(deltas.size());
        const auto n = static_cast<long>(deltas.size());
#ifdef _OPENMP
        if (workers > 0) omp_set_dynamic(0);
#pragma omp parallel for schedule(static) num_threads(workers > 0 ? workers : omp_get_max_threads())
#endif
        for (long i = 0; i < n; ++i) {
            const double d = deltas[static_cast<std::size_t>(i)];
            std::vector<double> shifted(cs.pos.size());
            for (std::size_t j = 0; j < cs.pos.size(); ++j) shifted[j] = cs.pos[j] + d;
            points[static_cast<std::size_t>(i)] = {d, auroc_sorted(shifted, cs.neg),
                                                   auprc_sorted(shifted, cs.neg)};
        }
    } else {
        (void)workers; // swap sequences evolve point to point
        const bool from_top = strategy == ImprovementStrategy::top_first;
        const auto base_seq = descending_label_sequence(data);

        std::vector<GridPoint> down;
        auto seq = base_seq;
        double resolved = 0.0;
        for (std::size_t i = 1; i <= down_count; ++i) {
            const std::size_t did = apply_swaps(seq, k_target, false, from_top);
            if (did == 0) break;
            resolved -= static_cast<double>(did);
            down.push_back({resolved, auroc_from_sequence(seq, np, nn), auprc_from_sequence(seq)});
            if (did < k_target) break;
        }
        std::reverse(down.begin(), down.end());
        points = std::move(down);
        points.push_back({0.0, out.base_auroc, out.base_auprc});
        seq = base_seq;
        resolved = 0.0;
        for (std::size_t i = 1; i <= up_count; ++i) {
            const std::size_t did = apply_swaps(seq, k_target, true, from_top);
            if (did == 0) break;
            resolved += static_cast<double>(did);
            points.push_back({resolved, auroc_from_sequence(seq, np, nn), auprc_from_sequence(seq)});
            if (did < k_target) break;
        }
    }

    // Truncate to the [0.5, 1] quality range (keeping the baseline) and
    // collapse exact duplicates so quality is strictly increasing.
    for (auto& p : points) {
        if (p.increment == 0.0) { // baseline survives truncation
            p.auroc = out.base_auroc;
            p.auprc = out.base_auprc;
        }
    }
    std::vector<GridPoint> kept;
    kept.reserve(points.size());
    for (const auto& p : points) {
        if (p.auroc < 0.5 && p.increment != 0.0) continue;
        if (!kept.empty() && kept.back().auroc == p.auroc) continue;
        kept.push_back(p);
    }

    out.curve.quality_metric = MetricId::auroc;
    out.curve.companion_metric = MetricId::auprc;
    for (const auto& p : kept) {
        out.grid.increments.push_back(p.increment);
        out.grid.auroc.push_back(p.auroc);
        out.grid.auprc.push_back(p.auprc);
        out.curve.quality.push_back(p.auroc);
        out.curve.companion.push_back(p.auprc);
    }
    out.curve.validate();
    return out;
}

double map_to_quality(const SignalCurve& curve, double companion_value) {
    curve.validate();

    // collapse companion plateaus to their midpoint quality
    std::vector<double> comp, qual;
    comp.reserve(curve.size());
    qual.reserve(curve.size());
    std::size_t i = 0;
    while (i < curve.size()) {
        std::size_t j = i;
        while (j + 1 < curve.size() && curve.companion[j + 1] == curve.companion[i]) ++j;
        comp.push_back(curve.companion[i]);
        qual.push_back(0.5 * (curve.quality[i] + curve.quality[j]));
        i = j + 1;
    }

    if (companion_value < comp.front() || companion_value > comp.back()) {
        throw std::out_of_range("map_to_quality: value " + std::to_string(companion_value) +
                                " outside curve companion range [" + std::to_string(comp.front()) +
                                ", " + std::to_string(comp.back()) + "]");
    }
    const auto it = std::lower_bound(comp.begin(), comp.end(), companion_value);
    const auto k = static_cast<std::size_t>(it - comp.begin());
    if (k < comp.size() && comp[k] == companion_value) return qual[k];
    const double t = (companion_value - comp[k - 1]) / (comp[k] - comp[k - 1]);
    return qual[k - 1] + t * (qual[k] - qual[k - 1]);
}

} // namespace respow
