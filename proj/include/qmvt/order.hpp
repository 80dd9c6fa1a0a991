#pragma once

#include <cstddef>
#include <limits>

#include "qmvt/quantile_distribution.hpp"

namespace qmvt {

// Result of a grid-based order check. `witness_a`/`witness_b` locate the
// worst violation found: for the quantile-order check witness_a is the
// level u (witness_b unused, NaN); for the NBU check they are the ages
// (s,t) of the worst product-inequality breach.
struct OrderCheckResult {
    bool holds = true;
    double worst_violation = 0.0;
    double witness_a = std::numeric_limits<double>::quiet_NaN();
    double witness_b = std::numeric_limits<double>::quiet_NaN();
    std::size_t grid_size = 0;
    double tolerance = 0.0;
};

// Usual stochastic order via quantiles: X <=_st Y iff Q_X <= Q_Y on (0,1).
// Checked at grid_size interior levels with additive tolerance tol.
OrderCheckResult st_dominates(const QuantileDistribution& x, const QuantileDistribution& y,
                              std::size_t grid_size = 1024, double tol = 1e-10);

// New-better-than-used: survival(s)*survival(t) >= survival(s+t) for all
// s,t > 0. Checked on the product grid of ages Q(u) for u spread over
// [0.01, 0.99]; worst_violation is the largest positive excess
// survival(s+t) - survival(s)*survival(t) seen.
OrderCheckResult is_nbu(const QuantileDistribution& x, std::size_t grid_size = 128,
                        double tol = 1e-10);

} // namespace qmvt
