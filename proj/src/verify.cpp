#include "qmvt/verify.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qmvt/order.hpp"
#include "qmvt/rng.hpp"

namespace qmvt {
namespace {

// Deviate streams within a seed. Stream 0 is reserved for sample(); the
// verification cross-checks draw from their own streams so attaching a
// Monte Carlo check never perturbs sampled output.
constexpr std::uint64_t kStreamLhs = 1;
constexpr std::uint64_t kStreamRhs = 2;
constexpr std::uint64_t kStreamRemainder = 3;

struct Welford {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double standard_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / (static_cast<double>(n - 1) * static_cast<double>(n)));
    }
};

double residual_rel_of(double residual_abs, double lhs, double rhs) {
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return residual_abs / std::max(scale, 1e-300);
}

void check_mc_count(const VerifyOptions& opts) {
    if (opts.mc_samples > 0 && opts.mc_samples < 100)
        throw std::invalid_argument("Monte Carlo cross-check needs at least 100 samples");
}

// Both sides of the pair identity, with the bridge kept around for the
// Monte Carlo right side. When the mass gap is not positive the normalized
// bridge does not exist; the right side is then evaluated in unnormalized
// form integral of g'(u) (DeltaQ(u) - DeltaQ(0+)) du, which is the same
// quantity and keeps diagnostics meaningful for broken pairs.
struct PairEvaluation {
    double lhs = 0.0, lhs_err = 0.0;
    double rhs = 0.0, rhs_err = 0.0;
    double gap = 0.0;
    double offset = 0.0;
    std::optional<BridgeDistribution> z;
};

PairEvaluation evaluate_pair(const QuantileDistribution& lower, const QuantileDistribution& upper,
                             const TestFunction& g, const VerifyOptions& opts) {
    PairEvaluation ev;
    double g1 = g.value(1.0);
    double g0 = g.value(0.0);
    ev.gap = upper.mean() - lower.mean();
    ev.offset = upper.support_lower() - lower.support_lower();

    IntegrationResult left = integrate_open(
        [&](double u) {
            return (g1 - g.value(u)) * (upper.quantile_density(u) - lower.quantile_density(u));
        },
        opts.tol_quad);
    ev.lhs = left.value;
    ev.lhs_err = left.error_estimate;

    if (ev.gap > 0.0) {
        ev.z.emplace(bridge(lower, upper));
        IntegrationResult right = integrate_open(
            [&](double x) { return g.derivative(1, x) * ev.z->density(x); }, opts.tol_quad);
        ev.rhs = right.value * ev.gap - (g1 - g0) * ev.offset;
        ev.rhs_err = right.error_estimate * ev.gap + 8.0 * 0x1p-52 * std::fabs(right.value * ev.gap);
    } else {
        IntegrationResult right = integrate_open(
            [&](double u) {
                return g.derivative(1, u) *
                       (upper.quantile(u) - lower.quantile(u) - ev.offset);
            },
            opts.tol_quad);
        ev.rhs = right.value;
        ev.rhs_err = right.error_estimate;
    }
    return ev;
}

// Assemble a report for the pair form. `checks` arrives pre-seeded with the
// operation-specific hypothesis checks; the pair-level ones (stochastic
// order on a grid, ordered means) are appended here.
VerificationReport finish_pair_report(const QuantileDistribution& lower,
                                      const QuantileDistribution& upper, const TestFunction& g,
                                      const VerifyOptions& opts,
                                      std::vector<HypothesisCheck> checks) {
    check_mc_count(opts);

    OrderCheckResult order = st_dominates(lower, upper, opts.grid_size);
    checks.push_back({"st-order", order.holds});

    PairEvaluation ev = evaluate_pair(lower, upper, g, opts);
    checks.push_back({"mass-gap", ev.gap >= 0.0});

    VerificationReport report;
    report.lhs = ev.lhs;
    report.rhs = ev.rhs;
    report.lhs_err = ev.lhs_err;
    report.rhs_err = ev.rhs_err;
    report.residual_abs = std::fabs(ev.lhs - ev.rhs);
    report.residual_rel = residual_rel_of(report.residual_abs, ev.lhs, ev.rhs);
    report.hypothesis_checks = std::move(checks);
    report.tol_identity = opts.tol_identity;

    if (opts.mc_samples > 0) {
        double g1 = g.value(1.0);
        double g0 = g.value(0.0);
        Welford left;
        for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
            double u = uniform_open(opts.seed, kStreamLhs, i);
            left.add((g1 - g.value(u)) *
                     (upper.quantile_density(u) - lower.quantile_density(u)));
        }
        report.mc_lhs = MonteCarloEstimate{left.mean, left.standard_error(),
                                           static_cast<std::size_t>(opts.mc_samples)};
        if (ev.z && ev.z->sampleable()) {
            Welford right;
            for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
                double zi = ev.z->cdf_inverse(uniform_open(opts.seed, kStreamRhs, i));
                right.add(g.derivative(1, zi));
            }
            report.mc_rhs = MonteCarloEstimate{
                right.mean * ev.gap - (g1 - g0) * ev.offset,
                right.standard_error() * ev.gap,
                static_cast<std::size_t>(opts.mc_samples)};
        }
    }
    return report;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

VerificationReport verify_mvt(const QuantileDistribution& x, const QuantileDistribution& y,
                              const TestFunction& g, const VerifyOptions& opts) {
    std::vector<HypothesisCheck> checks;
    bool family = (x.in_family_d() || x.is_degenerate_at_zero()) && y.in_family_d();
    checks.push_back({"family-D", family});
    return finish_pair_report(x, y, g, opts, std::move(checks));
}

VerificationReport verify_theorem1(const QuantileDistribution& x, const DistortionFunction& h,
                                   const DistortionFunction& l, const TestFunction& g,
                                   const VerifyOptions& opts) {
    std::vector<HypothesisCheck> checks;
    checks.push_back({"family-D", x.in_family_d()});
    checks.push_back({"pointwise-dominance", pointwise_dominates(h, l, opts.grid_size)});

    DistortedDistribution lower = distort(x, h);
    DistortedDistribution upper = distort(x, l);
    VerificationReport report = finish_pair_report(lower, upper, g, opts, std::move(checks));

    // Independent left-side route: centered differences of the distorted
    // quantile functions instead of the chain-rule quantile densities. Both
    // routes are compared over the interior window (delta, 1-delta): closer
    // to the endpoints the composed level maps collapse 1-u below double
    // resolution and a difference quotient measures only rounding noise,
    // while a systematic chain-rule error would already show on the window.
    double g1 = g.value(1.0);
    constexpr double delta = 1e-6;
    auto fd_density = [](const QuantileDistribution& d, double u) {
        double step = 1e-5 * std::min(u, 1.0 - u);
        double hi = u + step;
        double lo = u - step;
        if (!(hi > lo)) return 0.0;
        return (d.quantile(hi) - d.quantile(lo)) / (hi - lo);
    };
    IntegrationResult direct = integrate_interval(
        [&](double u) {
            return (g1 - g.value(u)) *
                   (upper.quantile_density(u) - lower.quantile_density(u));
        },
        delta, 1.0 - delta, opts.tol_quad);
    IntegrationResult alt = integrate_interval(
        [&](double u) {
            return (g1 - g.value(u)) * (fd_density(upper, u) - fd_density(lower, u));
        },
        delta, 1.0 - delta, opts.tol_quad);
    double disagreement = std::fabs(alt.value - direct.value);
    double allowance =
        std::max(2.0 * opts.tol_quad, 4.0 * (alt.error_estimate + direct.error_estimate));
    report.hypothesis_checks.push_back(
        {"quantile-density-consistency", disagreement <= allowance});
    return report;
}

VerificationReport verify_theorem2(const QuantileDistribution& x, const DistortionFunction& h,
                                   double t, const TestFunction& g, const VerifyOptions& opts) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("verify_theorem2: age t must be finite and nonnegative");
    if (!(x.survival(t) > 0.0))
        throw std::domain_error("verify_theorem2: survival at age t is zero, nothing to condition on");

    std::vector<HypothesisCheck> checks;
    checks.push_back({"family-D", x.in_family_d()});
    checks.push_back({"NBU", is_nbu(x).holds});

    DistortedDistribution lower = distort(residual_lifetime(x, t), h);
    DistortedDistribution upper = distort(x, h);
    double gap = upper.mean() - lower.mean();
    if (std::fabs(gap) <= 1e-10 * std::max(1.0, std::fabs(upper.mean())))
        throw std::domain_error(
            "verify_theorem2: mass gap vanishes at this age (memoryless base); the "
            "normalized identity is degenerate");
    return finish_pair_report(lower, upper, g, opts, std::move(checks));
}

VerificationReport verify_taylor(const QuantileDistribution& x, const TestFunction& g, int order,
                                 const VerifyOptions& opts) {
    if (order < 1 || order > g.max_order())
        throw std::invalid_argument("verify_taylor: order must be in 1.." +
                                    std::to_string(g.max_order()));
    if (!x.in_family_d())
        throw std::domain_error(
            "verify_taylor: the remainder is a Lorenz-law expectation, which requires "
            "Q(0+) = 0 and a finite nonzero mean");
    check_mc_count(opts);

    double g1 = g.value(1.0);
    double mean = x.mean();
    BridgeDistribution lz = lorenz(x);

    IntegrationResult left = integrate_open(
        [&](double u) { return (g1 - g.value(u)) * x.quantile_density(u); }, opts.tol_quad);

    double rhs = 0.0;
    double rhs_err = 0.0;
    for (int k = 1; k < order; ++k) {
        IntegrationResult term = integrate_open(
            [&](double u) {
                return g.derivative(k, u) * std::pow(1.0 - u, k) * x.quantile_density(u);
            },
            opts.tol_quad);
        rhs += term.value / factorial(k);
        rhs_err += term.error_estimate / factorial(k);
    }
    double remainder_coeff = mean / factorial(order - 1);
    IntegrationResult remainder = integrate_open(
        [&](double z) {
            return g.derivative(order, z) * std::pow(1.0 - z, order - 1) * lz.density(z);
        },
        opts.tol_quad);
    rhs += remainder_coeff * remainder.value;
    rhs_err += std::fabs(remainder_coeff) * remainder.error_estimate;

    VerificationReport report;
    report.lhs = left.value;
    report.lhs_err = left.error_estimate;
    report.rhs = rhs;
    report.rhs_err = rhs_err;
    report.residual_abs = std::fabs(report.lhs - report.rhs);
    report.residual_rel = residual_rel_of(report.residual_abs, report.lhs, report.rhs);
    report.hypothesis_checks.push_back({"family-D", true});
    report.tol_identity = opts.tol_identity;

    if (opts.mc_samples > 0) {
        Welford left_mc;
        for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
            double u = uniform_open(opts.seed, kStreamLhs, i);
            left_mc.add((g1 - g.value(u)) * x.quantile_density(u));
        }
        report.mc_lhs = MonteCarloEstimate{left_mc.mean, left_mc.standard_error(),
                                           static_cast<std::size_t>(opts.mc_samples)};

        Welford sum_mc;
        for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
            double u = uniform_open(opts.seed, kStreamRhs, i);
            double v = 0.0;
            for (int k = 1; k < order; ++k)
                v += g.derivative(k, u) * std::pow(1.0 - u, k) / factorial(k);
            sum_mc.add(v * x.quantile_density(u));
        }
        Welford rem_mc;
        for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
            double z = lz.cdf_inverse(uniform_open(opts.seed, kStreamRemainder, i));
            rem_mc.add(g.derivative(order, z) * std::pow(1.0 - z, order - 1));
        }
        double est = sum_mc.mean + remainder_coeff * rem_mc.mean;
        double se = std::sqrt(sum_mc.standard_error() * sum_mc.standard_error() +
                              remainder_coeff * remainder_coeff * rem_mc.standard_error() *
                                  rem_mc.standard_error());
        report.mc_rhs =
            MonteCarloEstimate{est, se, static_cast<std::size_t>(opts.mc_samples)};
    }
    return report;
}

} // namespace qmvt
