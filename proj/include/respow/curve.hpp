#pragma once

#include <cstddef>
#include <vector>

#include "respow/scores.hpp"

namespace respow {

// Metric-to-metric mapping traced over a grid of improving models:
// quality is the reference-metric axis (AUROC by default), companion the
// metric being compared. quality is strictly increasing, companion
// non-decreasing, all values in [0,1].
struct SignalCurve {
    std::vector<double> quality;
    std::vector<double> companion;
    MetricId quality_metric = MetricId::auroc;
    MetricId companion_metric = MetricId::auprc;

    std::size_t size() const { return quality.size(); }
    void validate() const;
};

} // namespace respow
