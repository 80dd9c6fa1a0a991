#pragma once

#include <cstdint>

#include "qmvt/bridge.hpp"
#include "qmvt/distortion.hpp"
#include "qmvt/quantile_distribution.hpp"
#include "qmvt/report.hpp"
#include "qmvt/test_function.hpp"

namespace qmvt {

struct VerifyOptions {
    // Tolerance passed to every quadrature in the verification.
    double tol_quad = 1e-9;
    // Acceptance threshold for |lhs - rhs| (see VerificationReport::verified).
    double tol_identity = 1e-6;
    // Grid resolution of the stochastic-order hypothesis check.
    std::size_t grid_size = 1024;
    // Monte Carlo cross-check sample count; 0 disables, otherwise >= 100.
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 42;
};

// Mean-value identity for a pair X <=_st Y with E[X] < E[Y]:
//
//   integral of (g(1) - g(u)) (q_Y - q_X)(u) du
//     = E[g'(Z)] (E[Y] - E[X]) - (g(1) - g(0)) (Q_Y(0+) - Q_X(0+)),
//
// Z the bridge law of the pair. The boundary term vanishes when both
// members start at the same point; it is kept because conditional-tail
// distortions shift the lower support endpoint. Hypothesis violations
// (family membership, stochastic order, ordered means) are recorded as
// failed checks while the evaluation still runs, so a broken pair yields a
// diagnostic report rather than an exception. Divergent means propagate as
// DivergenceError.
VerificationReport verify_mvt(const QuantileDistribution& x, const QuantileDistribution& y,
                              const TestFunction& g, const VerifyOptions& opts = {});

// Same identity for the pair (X_h, X_l) with h <= l pointwise. Beyond the
// pair checks this re-derives the left-side integrand from centered
// differences of the two distorted quantile functions and records the
// agreement of the two routes over an interior window as the
// "quantile-density-consistency" check, so a chain-rule mistake in the
// distorted density cannot silently cancel.
VerificationReport verify_theorem1(const QuantileDistribution& x, const DistortionFunction& h,
                                   const DistortionFunction& l, const TestFunction& g,
                                   const VerifyOptions& opts = {});

// Same identity for the pair ((X_t)_h, X_h): residual lifetime at age t
// versus the base, both distorted by h. Requires survival(t) > 0. The NBU
// property of X is checked and recorded; a failure downgrades the report
// rather than aborting. Throws std::domain_error when the mass gap
// vanishes (memoryless base), where the normalized form does not exist.
VerificationReport verify_theorem2(const QuantileDistribution& x, const DistortionFunction& h,
                                   double t, const TestFunction& g,
                                   const VerifyOptions& opts = {});

// Taylor-style expansion around the upper endpoint of the unit interval:
//
//   integral of (g(1) - g(u)) q(u) du
//     = sum_{k=1}^{n-1} (1/k!) integral of g^(k)(u) (1-u)^k q(u) du
//       + (1/(n-1)!) E[X] E[ g^(n)(Z) (1-Z)^(n-1) ],
//
// Z the Lorenz law of X. Valid for 1 <= n <= g.max_order(). Requires X in
// family D (throws std::domain_error otherwise, since the remainder is an
// expectation under the Lorenz law, which needs Q(0+) = 0).
VerificationReport verify_taylor(const QuantileDistribution& x, const TestFunction& g, int order,
                                 const VerifyOptions& opts = {});

} // namespace qmvt
