#pragma once

#include "respow/curve.hpp"
#include "respow/noise.hpp"

namespace respow {

// Per-metric row of a resolution comparison. For the reference metric the
// mapped interval equals the raw one and delta is zero by construction.
struct MetricResolution {
    MetricId metric;
    double ci_low = 0.0;  // raw CI
    double ci_high = 0.0;
    double q_low = 0.0;   // CI mapped to the quality scale
    double q_high = 0.0;
    double kappa = 0.0;           // q_high - q_low
    double resolving_power = 0.0; // 1 / kappa
    double delta = 0.0;           // (kappa - kappa_ref) / kappa_ref
};

struct ResolutionReport {
    MetricResolution reference;
    MetricResolution companion;
};

// Maps both metrics' confidence intervals to the quality scale and
// compares their widths. The companion CI must lie inside the curve's
// companion range; an out-of-range bound throws std::out_of_range naming
// the bound.
ResolutionReport resolution(const SignalCurve& curve,
                            const NoiseEstimate& ref_noise,
                            const NoiseEstimate& comp_noise);

// (kappa_comp - kappa_ref) / kappa_ref. Throws std::domain_error for
// non-positive widths.
double relative_delta(double kappa_ref, double kappa_comp);

// Local straight-line alternative: resolve the comparison from the curve
// slope at the evaluation point and the two replicate standard deviations,
// with no confidence level involved.
struct LinearApprox {
    double eval_companion = 0.0;
    double eval_quality = 0.0;
    double slope = 0.0;     // d(quality)/d(companion) of the local fit
    double intercept = 0.0;
    double sigma_ref = 0.0;
    double sigma_companion = 0.0;
    double kappa_ratio = 0.0;      // slope * sigma_companion / sigma_ref
    bool reference_favored = false; // slope > sigma_ref / sigma_companion
    // Replicate skewness, reported so callers can judge the symmetric-
    // distribution assumption; nothing is gated on it.
    double ref_skewness = 0.0;
    double companion_skewness = 0.0;
};

// Least-squares line through the curve points within `window` grid steps
// of the evaluation point (the companion replicate mean). Throws
// std::domain_error when the local points have no companion spread.
LinearApprox linear_resolution(const SignalCurve& curve,
                               const NoiseEstimate& ref_noise,
                               const NoiseEstimate& comp_noise,
                               int window = 5);

} // namespace respow
