#include "qmvt/distortion.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qmvt/errors.hpp"

namespace qmvt {

DistortionFunction::DistortionFunction(RealFunction apply, RealFunction inverse,
                                       RealFunction derivative, std::string label)
    : apply_(std::move(apply)), inverse_(std::move(inverse)),
      derivative_(std::move(derivative)), label_(std::move(label)) {}

DistortionFunction DistortionFunction::identity() {
    return DistortionFunction([](double t) { return t; }, [](double v) { return v; },
                              [](double) { return 1.0; }, "identity");
}

DistortionFunction DistortionFunction::power(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("power distortion: alpha must be positive and finite");
    char buf[64];
    std::snprintf(buf, sizeof buf, "power(%g)", alpha);
    return DistortionFunction(
        [alpha](double t) { return std::pow(t, alpha); },
        [alpha](double v) { return std::pow(v, 1.0 / alpha); },
        [alpha](double t) { return alpha * std::pow(t, alpha - 1.0); }, buf);
}

DistortionFunction DistortionFunction::dual_power(int m) {
    if (m < 1) throw std::invalid_argument("dual_power distortion: m must be a positive integer");
    char buf[64];
    std::snprintf(buf, sizeof buf, "dual_power(%d)", m);
    double md = m;
    return DistortionFunction(
        [md](double t) { return 1.0 - std::pow(1.0 - t, md); },
        [md](double v) { return 1.0 - std::pow(1.0 - v, 1.0 / md); },
        [md](double t) { return md * std::pow(1.0 - t, md - 1.0); }, buf);
}

DistortionFunction DistortionFunction::cte(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("cte distortion: requires 0 <= p < 1");
    char buf[64];
    std::snprintf(buf, sizeof buf, "cte(%g)", p);
    double keep = 1.0 - p;
    return DistortionFunction(
        [keep](double t) { return std::min(t / keep, 1.0); },
        [keep](double v) { return v >= 1.0 ? keep : keep * v; },
        [keep](double t) { return t <= keep ? 1.0 / keep : 0.0; }, buf);
}

DistortionFunction DistortionFunction::from_functions(RealFunction apply, RealFunction inverse,
                                                      RealFunction derivative, std::string label) {
    if (!apply || !inverse || !derivative)
        throw std::invalid_argument("distortion: all three functions are required");
    if (std::fabs(apply(0.0)) > 1e-12 || std::fabs(apply(1.0) - 1.0) > 1e-12)
        throw std::invalid_argument("distortion: must map 0 to 0 and 1 to 1");
    constexpr int kGrid = 512;
    double prev = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
        double t = static_cast<double>(i) / (kGrid + 1);
        double v = apply(t);
        if (!std::isfinite(v) || v < prev - 1e-12)
            throw std::invalid_argument("distortion: must be nondecreasing on [0,1]");
        prev = v;
        if (std::fabs(apply(inverse(t)) - t) > 1e-8)
            throw std::invalid_argument("distortion: inverse inconsistent with apply");
    }
    return DistortionFunction(std::move(apply), std::move(inverse), std::move(derivative),
                              std::move(label));
}

DistortionFunction compose(const DistortionFunction& outer, const DistortionFunction& inner) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "compose(%s,%s)", outer.label().c_str(),
                  inner.label().c_str());
    auto ho = outer.apply_, hi = inner.apply_;
    auto go = outer.inverse_, gi = inner.inverse_;
    auto dho = outer.derivative_, dhi = inner.derivative_;
    return DistortionFunction(
        [ho, hi](double t) { return ho(hi(t)); },
        [go, gi](double v) { return gi(go(v)); },
        [ho, hi, dho, dhi](double t) { return dho(hi(t)) * dhi(t); }, buf);
}

bool pointwise_dominates(const DistortionFunction& h, const DistortionFunction& l,
                         std::size_t grid_size) {
    if (grid_size == 0) throw std::invalid_argument("pointwise_dominates: empty grid");
    for (std::size_t i = 1; i <= grid_size; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(grid_size + 1);
        if (h.apply(t) > l.apply(t) + 1e-12) return false;
    }
    return true;
}

DistortedDistribution::DistortedDistribution(QuantileDistribution assembled,
                                             QuantileDistribution base,
                                             DistortionFunction distortion)
    : QuantileDistribution(std::move(assembled)), base_(std::move(base)),
      distortion_(std::move(distortion)) {}

DistortedDistribution distort(const QuantileDistribution& x, const DistortionFunction& h) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "distorted(%s,%s)", x.label().c_str(), h.label().c_str());

    QuantileDistribution::Parts parts;
    parts.quantile = [x, h](double u) {
        return x.quantile(detail::clamp_unit_open(1.0 - h.inverse(1.0 - u)));
    };
    parts.quantile_density = [x, h](double u) {
        double y = h.inverse(1.0 - u);
        double slope = h.derivative(y);
        if (slope <= 0.0) return std::numeric_limits<double>::infinity();
        return x.quantile_density(detail::clamp_unit_open(1.0 - y)) / slope;
    };
    parts.survival = [x, h](double v) {
        double s = x.survival(v);
        if (s < 0.0) s = 0.0;
        if (s > 1.0) s = 1.0;
        return h.apply(s);
    };
    parts.cdf = [x, h](double v) {
        double s = x.survival(v);
        if (s < 0.0) s = 0.0;
        if (s > 1.0) s = 1.0;
        return 1.0 - h.apply(s);
    };
    double top_preimage = h.inverse(1.0);
    parts.support_lower = top_preimage >= 1.0 - 1e-15
                              ? x.support_lower()
                              : x.quantile(1.0 - top_preimage);
    parts.label = buf;
    return DistortedDistribution(QuantileDistribution::assemble(std::move(parts)), x, h);
}

double distorted_mean(const QuantileDistribution& x, const DistortionFunction& h, double tol) {
    auto integrand = [&x, &h](double t) {
        double s = x.survival(t);
        if (s < 0.0) s = 0.0;
        if (s > 1.0) s = 1.0;
        return h.apply(s);
    };

    double cutoff = 1.0;
    while (integrand(cutoff) >= 1e-12) {
        cutoff *= 2.0;
        if (cutoff > 0x1p40)
            throw DivergenceError("distorted_mean: survival mass does not decay", 0.0, 0.0);
    }

    double total = integrate_interval(integrand, 0.0, cutoff, tol).value;
    for (int round = 0; round < 20; ++round) {
        double chunk = integrate_interval(integrand, cutoff, 2.0 * cutoff, tol).value;
        total += chunk;
        cutoff *= 2.0;
        if (std::fabs(chunk) <= tol) return total;
    }
    throw DivergenceError("distorted_mean: tail contribution does not fall below tolerance",
                          total, std::numeric_limits<double>::infinity());
}

} // namespace qmvt
