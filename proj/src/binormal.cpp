#include "respow/binormal.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "respow/normal.hpp"
#include "respow/quadrature.hpp"

namespace respow {

void BinormalModel::validate() const {
    if (!(sigma_neg > 0.0) || !(sigma_pos > 0.0)) {
        throw std::invalid_argument("BinormalModel: sigmas must be positive");
    }
}

long PopulationSpec::n_pos() const { return std::lround(prevalence * static_cast<double>(sample_size)); }

long PopulationSpec::n_neg() const { return sample_size - n_pos(); }

void PopulationSpec::validate() const {
    model.validate();
    if (!(prevalence > 0.0 && prevalence < 1.0)) {
        throw std::domain_error("PopulationSpec: prevalence must lie in (0,1)");
    }
    if (sample_size < 2) throw std::invalid_argument("PopulationSpec: sample_size must be >= 2");
    if (n_pos() < 1 || n_neg() < 1) {
        throw std::invalid_argument("PopulationSpec: rounded class counts must both be >= 1");
    }
}

double shift_for_auroc(double target_auroc) {
    if (!(target_auroc >= 0.5 && target_auroc < 1.0)) {
        throw std::domain_error("shift_for_auroc: target must lie in [0.5, 1)");
    }
    constexpr double sqrt2 = 1.41421356237309504880;
    return sqrt2 * normal_quantile(target_auroc);
}

MetricValue analytic_auroc(const BinormalModel& model) {
    model.validate();
    const double spread = std::sqrt(model.sigma_pos * model.sigma_pos +
                                    model.sigma_neg * model.sigma_neg);
    return {MetricId::auroc, normal_cdf((model.mu_pos - model.mu_neg) / spread)};
}

namespace {

// Precision as a function of recall t for the binormal model. The score
// cut giving TPR = t is mu_pos - sigma_pos * Phi^-1(t); the symmetric form
// avoids computing 1-t near the endpoint.
struct PpvIntegrand {
    double mu_neg, sigma_neg, mu_pos, sigma_pos, prevalence;

    double limit_at_zero() const {
        if (sigma_pos > sigma_neg) return 1.0;
        if (sigma_pos < sigma_neg) return 0.0;
        if (mu_pos > mu_neg) return 1.0;
        if (mu_pos < mu_neg) return 0.0;
        return prevalence;
    }

    double operator()(double t) const {
        if (t <= 0.0) return limit_at_zero();
        if (t >= 1.0) return prevalence;
        const double cut = mu_pos - sigma_pos * normal_quantile(t);
        const double fpr = normal_cdf_upper((cut - mu_neg) / sigma_neg);
        const double signal = prevalence * t;
        return signal / (signal + (1.0 - prevalence) * fpr);
    }
};

} // namespace

double binormal_auprc(const BinormalModel& model, double prevalence,
                      double abs_tol, int initial_splits) {
    model.validate();
    if (!(prevalence > 0.0 && prevalence < 1.0)) {
        throw std::domain_error("binormal_auprc: prevalence must lie in (0,1)");
    }
    PpvIntegrand f{model.mu_neg, model.sigma_neg, model.mu_pos, model.sigma_pos, prevalence};
    return integrate_gk15(f, 0.0, 1.0, abs_tol, initial_splits);
}

MetricValue binormal_auprc(const PopulationSpec& spec) {
    spec.validate();
    return {MetricId::auprc, binormal_auprc(spec.model, spec.prevalence)};
}

double hanley_mcneil_se(double auroc, long n_pos, long n_neg) {
    if (!(auroc >= 0.5 && auroc < 1.0)) {
        throw std::domain_error("hanley_mcneil_se: auroc must lie in [0.5, 1)");
    }
    if (n_pos < 1 || n_neg < 1) {
        throw std::domain_error("hanley_mcneil_se: class counts must be >= 1");
    }
    const double a = auroc;
    const double q1 = a / (2.0 - a);
    const double q2 = 2.0 * a * a / (1.0 + a);
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    const double var = (a * (1.0 - a) + (np - 1.0) * (q1 - a * a) + (nn - 1.0) * (q2 - a * a)) /
                       (np * nn);
    return std::sqrt(var);
}

std::vector<double> QualityGrid::values() const {
    validate();
    const auto n_steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> out(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
}

void QualityGrid::validate() const {
    if (!(lo >= 0.5 && lo < hi && hi < 1.0)) {
        throw std::domain_error("QualityGrid: need 0.5 <= lo < hi < 1");
    }
    if (!(step > 0.0 && step <= hi - lo)) {
        throw std::domain_error("QualityGrid: step must be positive and fit the range");
    }
}

SignalCurve binormal_signal_curve(double prevalence, const QualityGrid& grid, int workers) {
    if (!(prevalence > 0.0 && prevalence < 1.0)) {
        throw std::domain_error("binormal_signal_curve: prevalence must lie in (0,1)");
    }
    SignalCurve curve;
    curve.quality = grid.values();
    curve.companion.resize(curve.quality.size());

    const auto n = static_cast<long>(curve.quality.size());
#ifdef _OPENMP
    if (workers > 0) omp_set_dynamic(0);
#pragma omp parallel for schedule(static) num_threads(workers > 0 ? workers : omp_get_max_threads())
#endif
    for (long i = 0; i < n; ++i) {
        const auto model = BinormalModel::standardized(shift_for_auroc(curve.quality[i]));
        curve.companion[i] = binormal_auprc(model, prevalence);
    }
    curve.validate();
    return curve;
}

} // namespace respow
