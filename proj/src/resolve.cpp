#include "respow/resolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "respow/signal.hpp"

namespace respow {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(std::span<const double> v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0));
}

double skewness_of(std::span<const double> v) {
    const double m = mean_of(v);
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    const auto n = static_cast<double>(v.size());
    m2 /= n;
    m3 /= n;
    return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double mapped_bound(const SignalCurve& curve, double value, const char* which) {
    try {
        return map_to_quality(curve, value);
    } catch (const std::out_of_range& e) {
        throw std::out_of_range(std::string("resolution: companion ") + which + ": " + e.what());
    }
}

} // namespace

double relative_delta(double kappa_ref, double kappa_comp) {
    if (!(kappa_ref > 0.0) || !(kappa_comp > 0.0)) {
        throw std::domain_error("relative_delta: resolutions must be positive");
    }
    return (kappa_comp - kappa_ref) / kappa_ref;
}

ResolutionReport resolution(const SignalCurve& curve, const NoiseEstimate& ref_noise,
                            const NoiseEstimate& comp_noise) {
    const double kappa_ref = ref_noise.ci_high - ref_noise.ci_low;
    if (!(kappa_ref > 0.0)) {
        throw std::domain_error("resolution: reference CI has zero width");
    }

    ResolutionReport report;
    report.reference = {ref_noise.metric, ref_noise.ci_low, ref_noise.ci_high,
                        ref_noise.ci_low, ref_noise.ci_high, kappa_ref,
                        1.0 / kappa_ref, 0.0};

    const double q_low = mapped_bound(curve, comp_noise.ci_low, "ci_low");
    const double q_high = mapped_bound(curve, comp_noise.ci_high, "ci_high");
    const double kappa_comp = q_high - q_low;
    if (!(kappa_comp > 0.0)) {
        throw std::domain_error("resolution: companion CI maps to zero quality width");
    }
    report.companion = {comp_noise.metric,  comp_noise.ci_low, comp_noise.ci_high,
                        q_low,              q_high,            kappa_comp,
                        1.0 / kappa_comp,   relative_delta(kappa_ref, kappa_comp)};
    return report;
}

LinearApprox linear_resolution(const SignalCurve& curve, const NoiseEstimate& ref_noise,
                               const NoiseEstimate& comp_noise, int window) {
    curve.validate();
    if (window < 1) throw std::invalid_argument("linear_resolution: window must be >= 1");
    if (ref_noise.replicate_values.size() < 2 || comp_noise.replicate_values.size() < 2) {
        throw std::invalid_argument("linear_resolution: need replicate values for both metrics");
    }

    LinearApprox out;
    out.sigma_ref = sd_of(ref_noise.replicate_values);
    out.sigma_companion = sd_of(comp_noise.replicate_values);
    if (!(out.sigma_ref > 0.0) || !(out.sigma_companion > 0.0)) {
        throw std::domain_error("linear_resolution: zero replicate spread");
    }
    out.ref_skewness = skewness_of(ref_noise.replicate_values);
    out.companion_skewness = skewness_of(comp_noise.replicate_values);
    out.eval_companion = mean_of(comp_noise.replicate_values);

    // nearest grid point to the evaluation companion value
    const auto& comp = curve.companion;
    auto it = std::lower_bound(comp.begin(), comp.end(), out.eval_companion);
    std::size_t idx = static_cast<std::size_t>(it - comp.begin());
    if (idx == comp.size()) {
        idx = comp.size() - 1;
    } else if (idx > 0 &&
               out.eval_companion - comp[idx - 1] < comp[idx] - out.eval_companion) {
        --idx;
    }

    const std::size_t lo = idx >= static_cast<std::size_t>(window)
                               ? idx - static_cast<std::size_t>(window)
                               : 0;
    const std::size_t hi = std::min(idx + static_cast<std::size_t>(window), curve.size() - 1);

    double sx = 0.0, sy = 0.0;
    const auto n = static_cast<double>(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        sx += comp[i];
        sy += curve.quality[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        sxx += (comp[i] - mx) * (comp[i] - mx);
        sxy += (comp[i] - mx) * (curve.quality[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::domain_error("linear_resolution: local points have no companion spread");
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.eval_quality = out.intercept + out.slope * out.eval_companion;
    out.kappa_ratio = out.slope * out.sigma_companion / out.sigma_ref;
    out.reference_favored = out.slope > out.sigma_ref / out.sigma_companion;
    return out;
}

} // namespace respow
