#include "qmvt/suite.hpp"

#include <cmath>
#include <cstdio>

namespace qmvt {
namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[320];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

// Each summed term of the expansion carries 1/k!; dropping those factors is
// the most consequential of the documented discrepancies, off by 0.25 on
// the cubic case below.
ErratumFinding taylor_factorials() {
    QuantileDistribution x = make_uniform01();
    TestFunction g = TestFunction::monomial(3);
    VerificationReport corrected = verify_taylor(x, g, 3);

    auto term = [&](int k) {
        return integrate_open([&](double u) {
                   return g.derivative(k, u) * std::pow(1.0 - u, k) * x.quantile_density(u);
               })
            .value;
    };
    double t1 = term(1);
    double t2 = term(2);
    double remainder = corrected.rhs - t1 - t2 / 2.0;
    double variant_rhs = t1 + t2 + remainder;
    double variant_residual = std::fabs(corrected.lhs - variant_rhs);

    ErratumFinding f;
    f.id = "taylor-missing-factorials";
    f.corrected = "each summed term of the endpoint expansion carries 1/k! and the remainder "
                  "1/(n-1)!";
    f.variant = "summed terms written without the 1/k! factors";
    f.evidence = fmt("uniform01, g=u^3, n=3: lhs=%.6g, rhs with factorials=%.6g, rhs without=%.6g "
                     "(residual %.3g)",
                     corrected.lhs, corrected.rhs, variant_rhs, variant_residual);
    f.demonstrated = corrected.residual_abs <= 1e-8 && variant_residual >= 0.2;
    return f;
}

ErratumFinding mean_inequality_direction() {
    QuantileDistribution x = make_uniform01();
    DistortionFunction h = DistortionFunction::power(2.0);
    DistortionFunction l = DistortionFunction::power(1.0);
    double eh = distorted_mean(x, h);
    double el = distorted_mean(x, l);

    ErratumFinding f;
    f.id = "mean-inequality-direction";
    f.corrected = "h <= l pointwise implies E[X_h] <= E[X_l] (smaller distortion, smaller "
                  "distorted mean)";
    f.variant = "the reversed inequality E[X_l] <= E[X_h]";
    f.evidence = fmt("uniform01, h=power(2) <= l=power(1): E[X_h]=%.6g < E[X_l]=%.6g; the "
                     "reversed direction fails by %.3g",
                     eh, el, el - eh);
    f.demonstrated = pointwise_dominates(h, l) && eh < el - 0.1;
    return f;
}

ErratumFinding exponent_swap() {
    QuantileDistribution x = make_uniform01();
    double mh = distorted_mean(x, DistortionFunction::power(2.0));

    ErratumFinding f;
    f.id = "exponent-swap";
    f.corrected = "for a power distortion t^alpha over uniform01 the distorted mean is "
                  "1/(alpha+1), so the larger exponent belongs to the smaller member";
    f.variant = "the displayed means with the two exponents' roles swapped";
    f.evidence = fmt("uniform01, alpha=2: distorted mean %.9g = 1/(alpha+1); the swapped "
                     "assignment 1/(beta+1)=%.3g with beta=1 misses it by %.3g",
                     mh, 0.5, std::fabs(mh - 0.5));
    f.demonstrated = std::fabs(mh - 1.0 / 3.0) <= 1e-9 && std::fabs(mh - 0.5) > 0.1;
    return f;
}

ErratumFinding maxima_simplification() {
    QuantileDistribution x = make_exponential(1.0);
    DistortedDistribution dm = distort(x, DistortionFunction::dual_power(2));
    double u = 0.5;
    double m = 2.0, lambda = 1.0;
    double general =
        std::pow(u, 1.0 / m - 1.0) / (m * lambda * (1.0 - std::pow(u, 1.0 / m)));
    double variant = 1.0 / (m * lambda * (std::pow(u, -1.0 / m) - 1.0));
    double lib = dm.quantile_density(u);
    double step = 1e-6;
    double fd = (dm.quantile(u + step) - dm.quantile(u - step)) / (2.0 * step);

    ErratumFinding f;
    f.id = "maxima-lhs-simplification";
    f.corrected = "the quantile density of the maximum-of-m distortion over exponential(lambda) "
                  "is u^{1/m-1} / (m lambda (1-u^{1/m}))";
    f.variant = "the shortened form 1 / (m lambda (u^{-1/m}-1)), which equals the correct "
                "density times u";
    f.evidence = fmt("m=2, lambda=1, u=1/2: chain rule gives %.6g (finite difference %.6g); the "
                     "shortened form gives %.6g, off by the factor u=%.2g",
                     lib, fd, variant, u);
    f.demonstrated = std::fabs(lib - general) <= 1e-9 * general &&
                     std::fabs(fd - general) <= 1e-4 * general &&
                     std::fabs(variant - u * general) <= 1e-12 &&
                     std::fabs(lib - variant) > 1.0;
    return f;
}

ErratumFinding tail_density_sign() {
    double p = 0.5, t = 0.5;
    BridgeDistribution b = nbu_bridge(make_uniform01(), DistortionFunction::cte(p), t);

    double worst = 0.0;
    for (int i = 1; i < 64; ++i) {
        double xx = i / 64.0;
        double want = 2.0 * (p + (1.0 - p) * xx) / (1.0 + p);
        worst = std::max(worst, std::fabs(b.density(xx) - want));
    }
    double total = b.cdf(1.0);
    double variant_integral =
        integrate_open([&](double xx) { return 2.0 * (1.0 + (1.0 - p) * (1.0 - xx)) / (1.0 + p); })
            .value;

    ErratumFinding f;
    f.id = "conditional-tail-density-sign";
    f.corrected = "the conditional-tail pair over uniform01 has bridge density "
                  "2(p+(1-p)x)/(1+p), which integrates to one";
    f.variant = "the reflected form 2(1+(1-p)(1-x))/(1+p), which integrates to (3-p)/(1+p)";
    f.evidence = fmt("p=1/2, t=1/2: computed density matches 2(p+(1-p)x)/(1+p) within %.2g and "
                     "integrates to %.9g; the reflected form integrates to %.6g",
                     worst, total, variant_integral);
    f.demonstrated = worst <= 1e-9 && std::fabs(total - 1.0) <= 1e-9 &&
                     std::fabs(variant_integral - (3.0 - p) / (1.0 + p)) <= 1e-9 &&
                     std::fabs(variant_integral - 1.0) > 0.5;
    return f;
}

} // namespace

std::vector<std::string> builtin_suite_texts() {
    return {
        R"({"type":"theorem1","base":{"name":"uniform01"},"h":{"name":"power","alpha":2.0},"l":{"name":"power","alpha":1.0},"g":"u^2"})",
        R"({"type":"theorem1","base":{"name":"uniform01"},"h":{"name":"power","alpha":3.0},"l":{"name":"power","alpha":1.0},"g":"u^3"})",
        R"({"type":"theorem1","base":{"name":"uniform01"},"h":{"name":"power","alpha":3.0},"l":{"name":"power","alpha":2.0},"g":"sin"})",
        R"({"type":"theorem1","base":{"name":"exponential","rate":1.0},"h":{"name":"dual_power","m":1},"l":{"name":"dual_power","m":2},"g":"u^1"})",
        R"({"type":"theorem1","base":{"name":"exponential","rate":1.0},"h":{"name":"dual_power","m":2},"l":{"name":"dual_power","m":3},"g":"u^2"})",
        R"({"type":"theorem1","base":{"name":"exponential","rate":1.0},"h":{"name":"dual_power","m":1},"l":{"name":"dual_power","m":3},"g":"exp"})",
        R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":0.25},"t":0.5,"g":"u^2"})",
        R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":0.5},"t":0.5,"g":"u^2"})",
        R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":0.75},"t":0.5,"g":"u^3"})",
        R"({"type":"mvt","base":{"name":"uniform01"},"upper":{"name":"uniform01","scale":2.0},"g":"u^2"})",
        R"({"type":"mvt","base":{"name":"uniform01"},"upper":{"name":"exponential","rate":1.0},"g":"exp"})",
        R"({"type":"mvt","base":{"name":"exponential","rate":1.0},"upper":{"name":"exponential","rate":0.5},"g":"sin"})",
        R"({"type":"taylor","base":{"name":"uniform01"},"n":3,"g":"u^3"})",
        R"({"type":"taylor","base":{"name":"exponential","rate":1.0},"n":2,"g":"u^2"})",
        R"({"type":"taylor","base":{"name":"uniform01"},"n":1,"g":"exp"})",
    };
}

std::vector<Scenario> builtin_suite() {
    std::vector<Scenario> out;
    for (const std::string& text : builtin_suite_texts()) out.push_back(parse_scenario_text(text));
    return out;
}

std::vector<ErratumFinding> erratum_findings() {
    return {taylor_factorials(), mean_inequality_direction(), exponent_swap(),
            maxima_simplification(), tail_density_sign()};
}

} // namespace qmvt
