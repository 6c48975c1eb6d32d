#include "respow/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "respow/normal.hpp"
#include "respow/rng.hpp"

namespace respow {

SamplingPlan SamplingPlan::binormal(const PopulationSpec& pop, int replicates,
                                    std::uint64_t seed, double alpha) {
    pop.validate();
    SamplingPlan plan;
    plan.population = pop;
    plan.replicates = replicates;
    plan.n_pos = pop.n_pos();
    plan.n_neg = pop.n_neg();
    plan.alpha = alpha;
    plan.master_seed = seed;
    plan.validate();
    return plan;
}

SamplingPlan SamplingPlan::empirical(LabeledScores pool, int replicates,
                                     std::uint64_t seed, double alpha, long sample_size) {
    pool.validate();
    SamplingPlan plan;
    if (sample_size <= 0) {
        plan.n_pos = static_cast<long>(pool.n_pos());
        plan.n_neg = static_cast<long>(pool.n_neg());
    } else {
        const double prevalence =
            static_cast<double>(pool.n_pos()) / static_cast<double>(pool.size());
        plan.n_pos = std::lround(prevalence * static_cast<double>(sample_size));
        plan.n_neg = sample_size - plan.n_pos;
    }
    plan.population = std::move(pool);
    plan.replicates = replicates;
    plan.alpha = alpha;
    plan.master_seed = seed;
    plan.validate();
    return plan;
}

void SamplingPlan::validate() const {
    if (replicates < 2) throw std::invalid_argument("SamplingPlan: replicates must be >= 2");
    if (n_pos < 1 || n_neg < 1) {
        throw std::invalid_argument("SamplingPlan: stratified class counts must both be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("SamplingPlan: alpha must lie in (0,1)");
    }
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw std::domain_error("quantile: empty input");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q must lie in [0,1]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double rank = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = rank - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

namespace {

// Sorted per-class pools of an empirical population, extracted once.
struct PoolView {
    std::vector<double> pos;
    std::vector<double> neg;
};

PoolView make_pool_view(const LabeledScores& pool) {
    PoolView view;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        (pool.labels[i] == 1 ? view.pos : view.neg).push_back(pool.scores[i]);
    }
    return view;
}

void draw_class_binormal(SplitMix64& rng, double mu, double sigma, long n,
                         std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n));
    for (auto& x : out) x = mu + sigma * normal_quantile(rng.next_unit());
}

void draw_class_empirical(SplitMix64& rng, const std::vector<double>& pool, long n,
                          std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n));
    const auto size = pool.size();
    for (auto& x : out) {
        auto idx = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(size));
        if (idx >= size) idx = size - 1;
        x = pool[idx];
    }
}

// Replicate draw shared by draw_replicate() and the evaluation loops, so
// every path sees the identical sample for a given (seed, index).
void draw_classes(const SamplingPlan& plan, const PoolView* view, int replicate_index,
                  std::vector<double>& pos, std::vector<double>& neg) {
    SplitMix64 pos_rng(derive_stream(plan.master_seed,
                                     {static_cast<std::uint64_t>(replicate_index), 1}));
    SplitMix64 neg_rng(derive_stream(plan.master_seed,
                                     {static_cast<std::uint64_t>(replicate_index), 0}));
    if (const auto* pop = std::get_if<PopulationSpec>(&plan.population)) {
        draw_class_binormal(pos_rng, pop->model.mu_pos, pop->model.sigma_pos, plan.n_pos, pos);
        draw_class_binormal(neg_rng, pop->model.mu_neg, pop->model.sigma_neg, plan.n_neg, neg);
    } else {
        draw_class_empirical(pos_rng, view->pos, plan.n_pos, pos);
        draw_class_empirical(neg_rng, view->neg, plan.n_neg, neg);
    }
}

double sample_sd(std::span<const double> v) {
    const auto n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

NoiseEstimate summarize(MetricId metric, std::vector<double> values, double alpha) {
    NoiseEstimate est;
    est.metric = metric;
    est.ci_low = quantile(values, alpha / 2.0);
    est.ci_high = quantile(values, 1.0 - alpha / 2.0);
    est.std_error = sample_sd(values);
    est.alpha = alpha;
    est.replicate_values = std::move(values);
    return est;
}

} // namespace

LabeledScores draw_replicate(const SamplingPlan& plan, int replicate_index) {
    if (replicate_index < 0 || replicate_index >= plan.replicates) {
        throw std::out_of_range("draw_replicate: replicate index out of range");
    }
    PoolView view;
    if (const auto* pool = std::get_if<LabeledScores>(&plan.population)) {
        view = make_pool_view(*pool);
        if (view.pos.empty() || view.neg.empty()) {
            throw std::invalid_argument("draw_replicate: empirical pool is missing a class");
        }
    }
    std::vector<double> pos, neg;
    draw_classes(plan, &view, replicate_index, pos, neg);

    LabeledScores out;
    out.scores.reserve(pos.size() + neg.size());
    out.labels.reserve(pos.size() + neg.size());
    for (double x : pos) {
        out.scores.push_back(x);
        out.labels.push_back(1);
    }
    for (double x : neg) {
        out.scores.push_back(x);
        out.labels.push_back(0);
    }
    return out;
}

std::vector<NoiseEstimate> estimate_noise(const SamplingPlan& plan,
                                          std::span<const MetricId> metrics, int workers) {
    plan.validate();
    if (metrics.empty()) throw std::invalid_argument("estimate_noise: no metrics requested");

    PoolView view;
    if (const auto* pool = std::get_if<LabeledScores>(&plan.population)) {
        view = make_pool_view(*pool);
        if (view.pos.empty() || view.neg.empty()) {
            throw std::invalid_argument("estimate_noise: empirical pool is missing a class");
        }
    }

    const auto n_rep = static_cast<std::size_t>(plan.replicates);
    std::vector<std::vector<double>> values(metrics.size(), std::vector<double>(n_rep));

    // Each replicate writes its own slot: results are independent of the
    // schedule and thread count.
#ifdef _OPENMP
    if (workers > 0) omp_set_dynamic(0);
#pragma omp parallel num_threads(workers > 0 ? workers : omp_get_max_threads())
#endif
    {
        std::vector<double> pos, neg;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long r = 0; r < plan.replicates; ++r) {
            draw_classes(plan, &view, static_cast<int>(r), pos, neg);
            std::sort(pos.begin(), pos.end());
            std::sort(neg.begin(), neg.end());
            for (std::size_t m = 0; m < metrics.size(); ++m) {
                values[m][static_cast<std::size_t>(r)] =
                    metrics[m] == MetricId::auroc ? auroc_sorted(pos, neg)
                                                  : auprc_sorted(pos, neg);
            }
        }
    }

    std::vector<NoiseEstimate> out;
    out.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        out.push_back(summarize(metrics[m], std::move(values[m]), plan.alpha));
    }
    return out;
}

std::vector<NoiseEstimate> estimate_noise_serial(const SamplingPlan& plan,
                                                 std::span<const MetricId> metrics) {
    plan.validate();
    if (metrics.empty()) throw std::invalid_argument("estimate_noise: no metrics requested");

    const auto n_rep = static_cast<std::size_t>(plan.replicates);
    std::vector<std::vector<double>> values(metrics.size(), std::vector<double>(n_rep));
    for (int r = 0; r < plan.replicates; ++r) {
        const LabeledScores sample = draw_replicate(plan, r);
        for (std::size_t m = 0; m < metrics.size(); ++m) {
            const MetricValue v = metrics[m] == MetricId::auroc ? auroc(sample) : auprc(sample);
            values[m][static_cast<std::size_t>(r)] = v.value;
        }
    }

    std::vector<NoiseEstimate> out;
    out.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        out.push_back(summarize(metrics[m], std::move(values[m]), plan.alpha));
    }
    return out;
}

} // namespace respow
