#pragma once

#include <functional>

namespace qmvt {

// Solve f(x) = target for a nondecreasing f on [lo, hi]. Requires
// f(lo) <= target <= f(hi) (up to rounding); throws std::invalid_argument
// when the bracket does not straddle the target. Bisection interleaved with
// secant steps; the secant step is only accepted while it stays well inside
// the current bracket, so worst-case behaviour is plain bisection.
double solve_monotone(const std::function<double(double)>& f, double target,
                      double lo, double hi, double xtol = 1e-13);

// Grow [lo, hi] geometrically upward from `start` until f(hi) >= target or
// the span exceeds `limit`. Returns the bracket; throws std::runtime_error
// if the target is never reached. Used to invert survival/cdf curves whose
// support has no a-priori upper bound.
std::pair<double, double> bracket_increasing(const std::function<double(double)>& f,
                                             double target, double start,
                                             double initial_step = 1.0,
                                             double limit = 1e12);

} // namespace qmvt
