#include "qmvt/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qmvt/rng.hpp"

namespace qmvt {
namespace {

constexpr int kPanels = 512;
constexpr double kPanelTol = 1e-12;

} // namespace

BridgeDistribution::BridgeDistribution(QuantileDistribution lower, QuantileDistribution upper,
                                       std::string label)
    : lower_(std::move(lower)), upper_(std::move(upper)), label_(std::move(label)) {
    gap_ = upper_.mean() - lower_.mean();
    if (!(gap_ > 0.0))
        throw std::domain_error(label_ + ": mass gap E[upper]-E[lower] must be positive");

    order_check_ = st_dominates(lower_, upper_);

    cum_.resize(kPanels + 1);
    fval_.resize(kPanels + 1);
    cum_[0] = 0.0;
    auto gap_fn = [this](double x) { return raw_gap(x); };
    for (int i = 1; i <= kPanels; ++i) {
        double a = static_cast<double>(i - 1) / kPanels;
        double b = static_cast<double>(i) / kPanels;
        cum_[i] = cum_[i - 1] + integrate_interval(gap_fn, a, b, kPanelTol).value;
    }
    for (int i = 0; i <= kPanels; ++i)
        fval_[i] = raw_gap(static_cast<double>(i) / kPanels);
}

double BridgeDistribution::raw_gap(double x) const {
    double u = detail::clamp_unit_open(x);
    return upper_.quantile(u) - lower_.quantile(u);
}

double BridgeDistribution::density(double x) const { return raw_gap(x) / gap_; }

double BridgeDistribution::cdf(double p) const {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return cum_[kPanels] / gap_;
    int k = std::min(static_cast<int>(p * kPanels), kPanels - 1);
    double a = static_cast<double>(k) / kPanels;
    auto gap_fn = [this](double x) { return raw_gap(x); };
    return (cum_[k] + integrate_interval(gap_fn, a, p, kPanelTol).value) / gap_;
}

double BridgeDistribution::cdf_inverse(double v) const {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("cdf_inverse: argument must lie in [0,1]");
    if (!sampleable())
        throw std::domain_error(
            "cdf_inverse: cdf is not monotone (density nonnegativity check failed)");
    double target = v * cum_[kPanels];
    auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    int k = std::clamp(static_cast<int>(it - cum_.begin()) - 1, 0, kPanels - 1);

    double w = 1.0 / kPanels;
    double rest = target - cum_[k];
    double mass = cum_[k + 1] - cum_[k];
    if (!(mass > 0.0)) return static_cast<double>(k) / kPanels;

    // Locally quadratic cdf: density interpolated linearly across the panel.
    double f0 = fval_[k];
    double slope = (fval_[k + 1] - f0) / w;
    double d;
    if (std::fabs(slope) * w < 1e-12 * std::max(f0, 1.0)) {
        d = f0 > 0.0 ? rest / f0 : 0.5 * w;
    } else {
        double disc = f0 * f0 + 2.0 * slope * rest;
        if (disc < 0.0) disc = 0.0;
        d = (std::sqrt(disc) - f0) / slope;
    }
    d = std::clamp(d, 0.0, w);
    return static_cast<double>(k) / kPanels + d;
}

BridgeDistribution lorenz(const QuantileDistribution& x) {
    if (!x.in_family_d())
        throw std::domain_error("lorenz: requires Q(0+)=0 and a finite nonzero mean");
    char buf[200];
    std::snprintf(buf, sizeof buf, "lorenz(%s)", x.label().c_str());
    return BridgeDistribution(make_degenerate_at_zero(), x, buf);
}

BridgeDistribution bridge(const QuantileDistribution& x, const QuantileDistribution& y) {
    char buf[240];
    std::snprintf(buf, sizeof buf, "bridge(%s,%s)", x.label().c_str(), y.label().c_str());
    return BridgeDistribution(x, y, buf);
}

BridgeDistribution distorted_bridge(const QuantileDistribution& x, const DistortionFunction& h,
                                    const DistortionFunction& l) {
    if (!pointwise_dominates(h, l))
        throw std::domain_error("distorted_bridge: requires h <= l pointwise on (0,1)");
    char buf[240];
    std::snprintf(buf, sizeof buf, "distorted_bridge(%s,%s,%s)", x.label().c_str(),
                  h.label().c_str(), l.label().c_str());
    return BridgeDistribution(distort(x, h), distort(x, l), buf);
}

BridgeDistribution nbu_bridge(const QuantileDistribution& x, const DistortionFunction& h,
                              double t) {
    if (!(x.survival(t) > 0.0))
        throw std::domain_error("nbu_bridge: survival at the given age is zero");
    OrderCheckResult nbu = is_nbu(x);
    if (!nbu.holds)
        throw std::domain_error("nbu_bridge: base distribution fails the NBU check");
    DistortedDistribution lower = distort(residual_lifetime(x, t), h);
    DistortedDistribution upper = distort(x, h);

    // A memoryless base makes the residual lifetime equal in law to the
    // base itself; the two means then agree up to quadrature rounding and
    // the normalization would be noise. Refuse rather than divide by it.
    double gap = upper.mean() - lower.mean();
    if (std::fabs(gap) <= 1e-10 * std::max(1.0, std::fabs(upper.mean())))
        throw std::domain_error(
            "nbu_bridge: mass gap vanishes (residual lifetime at this age has the same "
            "distorted mean as the base; memoryless case)");
    char buf[240];
    std::snprintf(buf, sizeof buf, "nbu_bridge(%s,%s,t=%g)", x.label().c_str(),
                  h.label().c_str(), t);
    return BridgeDistribution(std::move(lower), std::move(upper), buf);
}

std::vector<double> sample(const BridgeDistribution& b, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample: count must be positive");
    if (!b.sampleable())
        throw std::domain_error(
            "sample: density failed its nonnegativity (stochastic order) check");
    std::vector<double> draws(count);
    for (std::size_t i = 0; i < count; ++i)
        draws[i] = b.cdf_inverse(uniform_open(seed, 0, i));
    return draws;
}

} // namespace qmvt
