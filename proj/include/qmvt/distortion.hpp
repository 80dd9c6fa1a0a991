#pragma once

#include <cstddef>
#include <string>

#include "qmvt/quadrature.hpp"
#include "qmvt/quantile_distribution.hpp"

namespace qmvt {

// A distortion is a nondecreasing map h : [0,1] -> [0,1] with h(0) = 0 and
// h(1) = 1, applied to survival functions: the distorted variable X_h has
// survival h(survival_X(x)). inverse() is the generalized (smallest
// preimage) inverse, so families that reach 1 early, like the conditional
// tail map, still invert consistently: h(inverse(v)) = v on [0,1].
// derivative() returns one-sided values at kink points (the side
// approaching from below).
class DistortionFunction {
public:
    double apply(double t) const { return apply_(t); }
    double inverse(double v) const { return inverse_(v); }
    double derivative(double t) const { return derivative_(t); }
    const std::string& label() const { return label_; }

    static DistortionFunction identity();

    // h(t) = t^alpha, alpha > 0. Proportional-hazard-rate distortion.
    static DistortionFunction power(double alpha);

    // h(t) = 1-(1-t)^m for a positive integer m: the survival map of the
    // maximum of m independent copies.
    static DistortionFunction dual_power(int m);

    // h(t) = min(t/(1-p), 1) for 0 <= p < 1: conditioning on exceeding the
    // p-th quantile. inverse(1) = 1-p (smallest preimage); derivative at
    // the kink t = 1-p is the left value 1/(1-p).
    static DistortionFunction cte(double p);

    // User-supplied triple, validated on a grid: endpoints pinned,
    // nondecreasing, and h(inverse(v)) = v within 1e-8.
    static DistortionFunction from_functions(RealFunction apply, RealFunction inverse,
                                             RealFunction derivative, std::string label);

private:
    DistortionFunction(RealFunction apply, RealFunction inverse, RealFunction derivative,
                       std::string label);
    RealFunction apply_;
    RealFunction inverse_;
    RealFunction derivative_;
    std::string label_;

    friend DistortionFunction compose(const DistortionFunction&, const DistortionFunction&);
};

// compose(outer, inner)(t) = outer(inner(t)).
DistortionFunction compose(const DistortionFunction& outer, const DistortionFunction& inner);

// True when h <= l + 1e-12 at every interior grid point i/(grid_size+1).
// The pointwise order of distortions transfers to the usual stochastic
// order of the distorted variables.
bool pointwise_dominates(const DistortionFunction& h, const DistortionFunction& l,
                         std::size_t grid_size = 1024);

// X distorted by h, carrying its ingredients. The quantile function is
// Q_h(u) = Q(1 - h^{-1}(1-u)); the quantile density divides the base
// quantile density by h'(h^{-1}(1-u)) (chain rule), returning +infinity
// where that derivative vanishes.
class DistortedDistribution : public QuantileDistribution {
public:
    const QuantileDistribution& base() const { return base_; }
    const DistortionFunction& distortion() const { return distortion_; }

private:
    DistortedDistribution(QuantileDistribution assembled, QuantileDistribution base,
                          DistortionFunction distortion);
    QuantileDistribution base_;
    DistortionFunction distortion_;

    friend DistortedDistribution distort(const QuantileDistribution&, const DistortionFunction&);
};

DistortedDistribution distort(const QuantileDistribution& x, const DistortionFunction& h);

// E[X_h] computed on the survival scale: integral over t > 0 of
// h(survival(t)), with the upper cutoff grown geometrically until both the
// integrand and the last doubling's contribution drop below tolerance.
// Agrees with mean_via_quantile(distort(x,h)) and provides the independent
// second route for it.
double distorted_mean(const QuantileDistribution& x, const DistortionFunction& h,
                      double tol = 1e-9);

} // namespace qmvt
