#pragma once

#include <vector>

#include "respow/curve.hpp"
#include "respow/scores.hpp"

namespace respow {

// Two-Gaussian score model. The standardized form used by the sweep fixes
// the negative class at N(0,1) and moves the positive class to N(delta,1).
struct BinormalModel {
    double mu_neg = 0.0;
    double sigma_neg = 1.0;
    double mu_pos = 0.0;
    double sigma_pos = 1.0;

    static BinormalModel standardized(double delta) { return {0.0, 1.0, delta, 1.0}; }
    void validate() const; // sigmas must be positive
};

struct PopulationSpec {
    BinormalModel model;
    double prevalence = 0.5; // share of positives, in (0,1)
    long sample_size = 10000;

    long n_pos() const; // round(prevalence * N)
    long n_neg() const;
    void validate() const;
};

// Positive-class shift delta for a standardized model with the given
// AUROC: sqrt(2) * Phi^-1(target). Throws std::domain_error outside
// [0.5, 1).
double shift_for_auroc(double target_auroc);

// Closed-form AUROC: Phi((mu_pos - mu_neg) / sqrt(sigma_pos^2 + sigma_neg^2)).
MetricValue analytic_auroc(const BinormalModel& model);

// AUPRC of the model at the given prevalence, by integrating precision as
// a function of recall. Quadrature error is held below abs_tol.
double binormal_auprc(const BinormalModel& model, double prevalence,
                      double abs_tol = 1e-9, int initial_splits = 8);
MetricValue binormal_auprc(const PopulationSpec& spec);

// Approximate standard error of an AUROC estimate from class counts.
double hanley_mcneil_se(double auroc, long n_pos, long n_neg);

// Evenly spaced AUROC grid for signal-curve construction.
struct QualityGrid {
    double lo = 0.5;
    double hi = 0.99995;
    double step = 5e-5;

    std::vector<double> values() const;
    void validate() const;
};

// Signal curve of the standardized binormal family at the given
// prevalence: each grid AUROC paired with the model's AUPRC. Grid points
// are independent; `workers` caps the OpenMP threads (0 = default).
SignalCurve binormal_signal_curve(double prevalence, const QualityGrid& grid,
                                  int workers = 0);

} // namespace respow
