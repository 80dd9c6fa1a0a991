#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmvt/distortion.hpp"
#include "qmvt/order.hpp"
#include "qmvt/quantile_distribution.hpp"

namespace qmvt {

// The law on (0,1) whose density is the normalized quantile gap
//
//     f(x) = (Q_upper(x) - Q_lower(x)) / (E[upper] - E[lower]),
//
// the common shape behind the Lorenz curve (degenerate lower endpoint) and
// the mean-value identities verified by this library. Construction requires
// E[lower] < E[upper]. The usual stochastic order lower <=_st upper makes
// the density nonnegative; it is checked on a grid and recorded rather than
// enforced, so a violating pair can still be inspected, but sampling such a
// signed object is refused.
//
// The cdf is cumulative quadrature of the gap; panel sums over a uniform
// 512-panel grid are computed once at construction, so evaluation and
// sampling never mutate shared state.
class BridgeDistribution {
public:
    double density(double x) const;
    double cdf(double p) const;

    // Inverse cdf, used by inverse-transform sampling. Resolves the panel
    // from the cached cumulative sums and a locally quadratic cdf model.
    double cdf_inverse(double v) const;

    double mass_gap() const { return gap_; }
    const QuantileDistribution& lower() const { return lower_; }
    const QuantileDistribution& upper() const { return upper_; }

    // Grid check of lower <=_st upper performed at construction.
    const OrderCheckResult& order_check() const { return order_check_; }
    bool sampleable() const { return order_check_.holds; }
    const std::string& label() const { return label_; }

private:
    BridgeDistribution(QuantileDistribution lower, QuantileDistribution upper,
                       std::string label);

    QuantileDistribution lower_;
    QuantileDistribution upper_;
    double gap_ = 0.0;
    std::string label_;
    OrderCheckResult order_check_;
    std::vector<double> cum_;   // unnormalized cumulative gap at i/kPanels
    std::vector<double> fval_;  // unnormalized gap values at i/kPanels

    double raw_gap(double x) const;

    friend BridgeDistribution lorenz(const QuantileDistribution&);
    friend BridgeDistribution bridge(const QuantileDistribution&, const QuantileDistribution&);
    friend BridgeDistribution distorted_bridge(const QuantileDistribution&,
                                               const DistortionFunction&,
                                               const DistortionFunction&);
    friend BridgeDistribution nbu_bridge(const QuantileDistribution&, const DistortionFunction&,
                                         double);
};

// Lorenz law of X: density Q_X(u)/E[X]. Requires X in the family the
// identities are stated for (throws std::domain_error otherwise).
BridgeDistribution lorenz(const QuantileDistribution& x);

// General two-distribution form. Requires E[x] < E[y].
BridgeDistribution bridge(const QuantileDistribution& x, const QuantileDistribution& y);

// Bridge between X distorted by h (lower) and by l (upper). Requires h <= l
// pointwise; checked before any construction work.
BridgeDistribution distorted_bridge(const QuantileDistribution& x, const DistortionFunction& h,
                                    const DistortionFunction& l);

// Bridge between the distorted residual lifetime (X_t)_h (lower) and X_h
// (upper). Requires survival(t) > 0 and X new-better-than-used; the NBU
// property is what makes the mass gap positive.
BridgeDistribution nbu_bridge(const QuantileDistribution& x, const DistortionFunction& h,
                              double t);

// count inverse-transform draws using the counter generator (stream 0 of
// the given seed). Deterministic for fixed (bridge, count, seed). Throws
// std::invalid_argument for count == 0 and std::domain_error when the
// density failed its nonnegativity check.
std::vector<double> sample(const BridgeDistribution& b, std::size_t count, std::uint64_t seed);

} // namespace qmvt
