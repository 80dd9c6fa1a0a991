#include "qmvt/quantile_distribution.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qmvt/errors.hpp"
#include "qmvt/rootfind.hpp"

namespace qmvt {

struct QuantileDistribution::State {
    RealFunction quantile;
    RealFunction quantile_density;
    RealFunction cdf;
    RealFunction survival;
    double support_lower = 0.0;
    std::optional<double> mean;
    bool mean_divergent = false;
    bool in_family_d = false;
    bool degenerate_at_zero = false;
    std::string label;
};

QuantileDistribution::QuantileDistribution(std::shared_ptr<const State> state)
    : state_(std::move(state)) {}

double QuantileDistribution::quantile(double u) const { return state_->quantile(u); }
double QuantileDistribution::quantile_density(double u) const { return state_->quantile_density(u); }
double QuantileDistribution::cdf(double x) const { return state_->cdf(x); }
double QuantileDistribution::survival(double x) const { return state_->survival(x); }
double QuantileDistribution::support_lower() const { return state_->support_lower; }
bool QuantileDistribution::in_family_d() const { return state_->in_family_d; }
bool QuantileDistribution::is_degenerate_at_zero() const { return state_->degenerate_at_zero; }
const std::string& QuantileDistribution::label() const { return state_->label; }

double QuantileDistribution::mean() const {
    if (state_->mean) return *state_->mean;
    throw DivergenceError("mean of " + state_->label + " diverges", 0.0, 0.0);
}

QuantileDistribution QuantileDistribution::assemble(Parts parts) {
    auto state = std::make_shared<State>();
    state->quantile = std::move(parts.quantile);
    state->quantile_density = std::move(parts.quantile_density);
    state->cdf = std::move(parts.cdf);
    state->survival = std::move(parts.survival);
    state->support_lower = parts.support_lower;
    state->degenerate_at_zero = parts.degenerate_at_zero;
    state->label = std::move(parts.label);

    if (parts.mean) {
        state->mean = parts.mean;
    } else if (!parts.mean_divergent) {
        try {
            state->mean = integrate_open(state->quantile).value;
        } catch (const DivergenceError&) {
            state->mean_divergent = true;
        }
    } else {
        state->mean_divergent = true;
    }

    if (parts.family_d) {
        state->in_family_d = *parts.family_d;
    } else {
        bool starts_at_zero = std::fabs(state->quantile(1e-9)) <= 1e-6;
        bool mean_ok = state->mean.has_value() && std::isfinite(*state->mean) && *state->mean > 0.0;
        state->in_family_d = starts_at_zero && mean_ok && !state->degenerate_at_zero;
    }
    return QuantileDistribution(std::move(state));
}

QuantileDistribution make_uniform01() {
    QuantileDistribution::Parts parts;
    parts.quantile = [](double u) { return u; };
    parts.quantile_density = [](double) { return 1.0; };
    parts.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
    parts.survival = [](double x) { return x <= 0.0 ? 1.0 : (x >= 1.0 ? 0.0 : 1.0 - x); };
    parts.mean = 0.5;
    parts.family_d = true;
    parts.label = "uniform01";
    return QuantileDistribution::assemble(std::move(parts));
}

QuantileDistribution make_exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("make_exponential: rate must be positive and finite");
    char buf[64];
    std::snprintf(buf, sizeof buf, "exponential(rate=%g)", rate);
    QuantileDistribution::Parts parts;
    parts.quantile = [rate](double u) { return -std::log1p(-u) / rate; };
    parts.quantile_density = [rate](double u) { return 1.0 / (rate * (1.0 - u)); };
    parts.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
    parts.survival = [rate](double x) { return x <= 0.0 ? 1.0 : std::exp(-rate * x); };
    parts.mean = 1.0 / rate;
    parts.family_d = true;
    parts.label = buf;
    return QuantileDistribution::assemble(std::move(parts));
}

QuantileDistribution make_degenerate_at_zero() {
    QuantileDistribution::Parts parts;
    parts.quantile = [](double) { return 0.0; };
    parts.quantile_density = [](double) { return 0.0; };
    parts.cdf = [](double x) { return x < 0.0 ? 0.0 : 1.0; };
    parts.survival = [](double x) { return x < 0.0 ? 1.0 : 0.0; };
    parts.mean = 0.0;
    parts.family_d = false;
    parts.degenerate_at_zero = true;
    parts.label = "degenerate0";
    return QuantileDistribution::assemble(std::move(parts));
}

QuantileDistribution make_from_quantile(RealFunction quantile, RealFunction quantile_density,
                                        std::string label) {
    if (!quantile || !quantile_density)
        throw std::invalid_argument("make_from_quantile: both functions are required");

    // Validation grid: finite, nondecreasing, q >= 0, and q consistent with
    // a centered difference of Q. A jump in Q (flat cdf segment) makes the
    // difference quotient explode relative to q and is rejected here.
    constexpr int kGrid = 256;
    double prev = -std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
        double u = static_cast<double>(i) / (kGrid + 1);
        double qv = quantile(u);
        if (!std::isfinite(qv))
            throw std::invalid_argument("make_from_quantile: quantile not finite at interior point");
        if (qv < prev - 1e-12 * (1.0 + std::fabs(qv)))
            throw std::invalid_argument("make_from_quantile: quantile must be nondecreasing");
        prev = qv;
        scale = std::max(scale, std::fabs(qv));
        double dv = quantile_density(u);
        if (!std::isfinite(dv) || dv < -1e-12)
            throw std::invalid_argument("make_from_quantile: quantile density must be finite and nonnegative");
        double step = 1e-5 * std::min(u, 1.0 - u);
        double fd = (quantile(u + step) - quantile(u - step)) / (2.0 * step);
        if (std::fabs(fd - dv) > 0.02 * (1.0 + std::fabs(fd) + std::fabs(dv)))
            throw std::invalid_argument(
                "make_from_quantile: quantile density inconsistent with quantile "
                "(jump or flat cdf segment?)");
    }

    // The pointwise check can straddle a jump that sits between grid points,
    // so also reconcile each interior cell's increment of Q against Simpson
    // on q. A jump contributes to the increment but not to the rule.
    for (int i = 8; i < kGrid - 8; ++i) {
        double a = static_cast<double>(i) / kGrid;
        double b = static_cast<double>(i + 1) / kGrid;
        double inc = quantile(b) - quantile(a);
        double rule = (b - a) / 6.0 *
                      (quantile_density(a) + 4.0 * quantile_density(0.5 * (a + b)) +
                       quantile_density(b));
        if (std::fabs(inc - rule) > 0.05 * (std::fabs(inc) + std::fabs(rule)) + 1e-9 * (1.0 + scale))
            throw std::invalid_argument(
                "make_from_quantile: quantile increment across a cell disagrees with the "
                "integrated quantile density (jump in Q?)");
    }

    double q_low = quantile(1e-12);
    double q_high = quantile(1.0 - 1e-12);

    auto cdf = [quantile, q_low, q_high](double x) {
        if (x <= q_low) return 0.0;
        if (x >= q_high) return 1.0;
        return solve_monotone(quantile, x, 1e-12, 1.0 - 1e-12);
    };
    auto survival = [cdf](double x) { return 1.0 - cdf(x); };

    QuantileDistribution::Parts parts;
    parts.quantile = std::move(quantile);
    parts.quantile_density = std::move(quantile_density);
    parts.cdf = cdf;
    parts.survival = survival;
    parts.support_lower = std::max(0.0, q_low);
    parts.label = std::move(label);
    return QuantileDistribution::assemble(std::move(parts));
}

QuantileDistribution make_scaled(const QuantileDistribution& x, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("make_scaled: factor must be positive and finite");
    char buf[160];
    std::snprintf(buf, sizeof buf, "scaled(%s,%g)", x.label().c_str(), c);
    QuantileDistribution::Parts parts;
    parts.quantile = [x, c](double u) { return c * x.quantile(u); };
    parts.quantile_density = [x, c](double u) { return c * x.quantile_density(u); };
    parts.cdf = [x, c](double v) { return x.cdf(v / c); };
    parts.survival = [x, c](double v) { return x.survival(v / c); };
    parts.support_lower = c * x.support_lower();
    bool divergent = false;
    try {
        parts.mean = c * x.mean();
    } catch (const DivergenceError&) {
        divergent = true;
    }
    parts.mean_divergent = divergent;
    parts.family_d = x.in_family_d();
    parts.degenerate_at_zero = x.is_degenerate_at_zero();
    parts.label = buf;
    return QuantileDistribution::assemble(std::move(parts));
}

double mean_via_quantile(const QuantileDistribution& x, double tol) {
    return integrate_open([&x](double u) { return x.quantile(u); }, tol).value;
}

QuantileDistribution residual_lifetime(const QuantileDistribution& x, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("residual_lifetime: age must be finite and nonnegative");
    if (t == 0.0) return x;
    double sbar = x.survival(t);
    if (!(sbar > 0.0))
        throw std::domain_error("residual_lifetime: survival at the given age is zero");
    double ft = x.cdf(t);

    char buf[160];
    std::snprintf(buf, sizeof buf, "residual(%s,t=%g)", x.label().c_str(), t);

    QuantileDistribution::Parts parts;
    parts.quantile = [x, t, ft, sbar](double u) {
        return x.quantile(detail::clamp_unit_open(ft + u * sbar)) - t;
    };
    parts.quantile_density = [x, ft, sbar](double u) {
        return sbar * x.quantile_density(detail::clamp_unit_open(ft + u * sbar));
    };
    parts.cdf = [x, t, sbar](double v) {
        if (v <= 0.0) return 0.0;
        return std::min(1.0, (x.cdf(v + t) - (1.0 - sbar)) / sbar);
    };
    parts.survival = [x, t, sbar](double v) {
        if (v <= 0.0) return 1.0;
        return x.survival(v + t) / sbar;
    };
    parts.support_lower = 0.0;
    parts.label = buf;
    return QuantileDistribution::assemble(std::move(parts));
}

} // namespace qmvt
