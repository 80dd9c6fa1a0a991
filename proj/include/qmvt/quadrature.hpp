#pragma once

#include <cstddef>
#include <functional>

namespace qmvt {

using RealFunction = std::function<double(double)>;

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive integration of f over the open interval (0,1).
//
// The variable change u = 1/(1 + exp(-pi*sinh(t))) maps the real line onto
// (0,1) and clusters nodes double-exponentially at both ends, so integrable
// endpoint singularities (powers, logarithms) converge at the same rate as
// smooth integrands. The trapezoid sum in t is refined by halving the step
// until successive levels agree within tol.
//
// Nodes stop where the distance to an endpoint falls below 2^-50, the point
// past which a double argument cannot resolve 1-u anyway. The remaining
// sliver at each end is estimated by fitting A*c^-sigma to three probe
// values just inside the cutoff; the fit is exact for pure power behaviour
// and its internal inconsistency is folded into error_estimate.
//
// Throws DivergenceError when the level sums fail to settle within
// max_evaluations, when f is not finite at an interior node, or when the
// endpoint fit reports an exponent at or beyond 1 (a non-integrable
// singularity). The exception carries the partial value.
IntegrationResult integrate_open(const RealFunction& f, double tol = 1e-9,
                                 std::size_t max_evaluations = std::size_t{1} << 20);

// Same engine on (a,b) via an affine change of variables. Requires a <= b;
// returns an exact zero result when a == b. The tolerance applies to the
// result on (a,b), not to the unit-interval proxy.
IntegrationResult integrate_interval(const RealFunction& f, double a, double b,
                                     double tol = 1e-9,
                                     std::size_t max_evaluations = std::size_t{1} << 20);

} // namespace qmvt
