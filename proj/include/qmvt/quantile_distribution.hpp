#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qmvt/quadrature.hpp"

namespace qmvt {

// A nonnegative, absolutely continuous random variable represented by its
// quantile function Q(u) = inf{x : F(x) >= u} on (0,1), the quantile density
// q = Q', and the cdf/survival pair. Objects are immutable values: copies
// share state and all evaluation is const, so instances can be read from
// several threads at once.
//
// in_family_d() reports membership in the class this library's identities
// are stated for: Q(0+) = 0 and a finite nonzero mean. Membership is decided
// at construction (Q probed at u = 1e-9 against a 1e-6 slack, mean resolved
// by quadrature unless a closed form is supplied).
class QuantileDistribution {
public:
    double quantile(double u) const;
    double quantile_density(double u) const;
    double cdf(double x) const;
    double survival(double x) const;

    // Expected value. Closed form where the factory knew one, otherwise the
    // value of mean_via_quantile computed at construction. Throws
    // DivergenceError if the defining integral diverges.
    double mean() const;

    double support_lower() const;
    bool in_family_d() const;
    bool is_degenerate_at_zero() const;
    const std::string& label() const;

    // Assembly kit for factories in this library (distortions, residual
    // lifetimes, scaling). Fields left unset are resolved by assemble():
    // the mean by quadrature, family membership by the probe test.
    struct Parts {
        RealFunction quantile;
        RealFunction quantile_density;
        RealFunction cdf;
        RealFunction survival;
        double support_lower = 0.0;
        std::optional<double> mean;
        bool mean_divergent = false;
        std::optional<bool> family_d;
        bool degenerate_at_zero = false;
        std::string label = "distribution";
    };
    static QuantileDistribution assemble(Parts parts);

private:
    struct State;
    explicit QuantileDistribution(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

// Uniform law on (0,1): Q(u) = u.
QuantileDistribution make_uniform01();

// Exponential law with the given rate: Q(u) = -log(1-u)/rate. rate > 0.
QuantileDistribution make_exponential(double rate);

// Point mass at zero. Not absolutely continuous and not in the family the
// identities are stated for; it exists as the lower endpoint of the
// normalized-cumulative construction.
QuantileDistribution make_degenerate_at_zero();

// Build from user-supplied quantile function and quantile density. Both are
// validated on an interior grid: Q must be finite and nondecreasing, q
// nonnegative, and q must match a centered difference of Q within a loose
// relative band. The last check rejects quantile jumps, i.e. flat cdf
// segments, where the quantile density does not exist. The cdf is obtained
// by numeric inversion of Q (bisection with secant refinement).
QuantileDistribution make_from_quantile(RealFunction quantile, RealFunction quantile_density,
                                        std::string label = "custom");

// The law of c*X for c > 0.
QuantileDistribution make_scaled(const QuantileDistribution& x, double c);

// integral of Q over (0,1), the quantile representation of E[X].
double mean_via_quantile(const QuantileDistribution& x, double tol = 1e-9);

// Residual lifetime at age t: the law of X - t given X > t. Requires t >= 0
// and survival(t) > 0 (throws std::domain_error otherwise). t = 0 returns X
// itself.
QuantileDistribution residual_lifetime(const QuantileDistribution& x, double t);

namespace detail {
// Clamp a quantile-level argument into the open unit interval representable
// by doubles. Composed level maps can land exactly on 0 or 1 through
// rounding; the clamp keeps Q evaluations finite without measurable bias.
inline double clamp_unit_open(double u) {
    constexpr double lo = 1e-300;
    constexpr double hi = 1.0 - 0x1p-53;
    if (u < lo) return lo;
    if (u > hi) return hi;
    return u;
}
} // namespace detail

} // namespace qmvt
