#include "qmvt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qmvt/errors.hpp"

namespace qmvt {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Complement cutoff: nodes closer to an endpoint than this are dropped and
// covered by the endpoint tail fit instead. 2^-50 keeps the f argument
// representable with a few bits of complement resolution to spare.
constexpr double kComplementCut = 0x1p-50;

struct TailEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
};

// Integral of f over the sliver of width c0 next to one endpoint, estimated
// from probes at distances c0, 2*c0, 4*c0. A power fit |f| ~ A*c^-sigma is
// exact for pure power singularities and within a couple percent for
// logarithmic ones, which is far more resolution than the sliver needs.
TailEstimate endpoint_tail(const RealFunction& f, bool right_end, double c0,
                           double partial, double tol) {
    double x0 = right_end ? 1.0 - c0 : c0;
    double x1 = right_end ? 1.0 - 2.0 * c0 : 2.0 * c0;
    double x2 = right_end ? 1.0 - 4.0 * c0 : 4.0 * c0;
    double v0 = f(x0), v1 = f(x1), v2 = f(x2);
    const char* side = right_end ? "u=1" : "u=0";
    if (!std::isfinite(v0) || !std::isfinite(v1) || !std::isfinite(v2))
        throw DivergenceError(std::string("integrand not finite near ") + side, partial, std::fabs(partial));

    TailEstimate tail;
    bool growing = std::fabs(v0) > std::fabs(v1) && std::fabs(v1) > std::fabs(v2) &&
                   v0 * v1 > 0.0 && v1 * v2 > 0.0 && v2 != 0.0;
    if (!growing) {
        tail.value = v0 * c0;
        tail.uncertainty = (std::fabs(v0 - v1) + std::fabs(v1 - v2)) * c0;
        return tail;
    }
    double sigma0 = std::log2(std::fabs(v0) / std::fabs(v1));
    double sigma1 = std::log2(std::fabs(v1) / std::fabs(v2));
    if (sigma0 >= 0.98 && std::fabs(v0) * c0 * 40.0 > 0.1 * tol)
        throw DivergenceError(std::string("integrand appears non-integrable near ") + side,
                              partial, std::fabs(partial));
    double sigma = std::clamp(sigma0, 0.0, 0.95);
    tail.value = v0 * c0 / (1.0 - sigma);
    tail.uncertainty = std::fabs(tail.value) * (std::fabs(sigma0 - sigma1) + 0.02);
    return tail;
}

} // namespace

IntegrationResult integrate_open(const RealFunction& f, double tol,
                                 std::size_t max_evaluations) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_open: tol must be positive");

    const double t_cut = std::asinh(std::log((1.0 - kComplementCut) / kComplementCut) / kPi);
    std::size_t evals = 0;

    // Weighted integrand in the transformed variable. Nodes past the
    // complement cutoff report ok=false and are skipped; the tail fit owns
    // that region.
    auto weighted = [&](double t, bool& ok) -> double {
        double s = std::sinh(t);
        double c = 1.0 / (1.0 + std::exp(kPi * std::fabs(s)));
        if (c < kComplementCut) { ok = false; return 0.0; }
        ok = true;
        double u = (t >= 0.0) ? 1.0 - c : c;
        double v = f(u);
        ++evals;
        if (!std::isfinite(v))
            throw DivergenceError("integrand not finite at u=" + std::to_string(u), 0.0, 0.0);
        return kPi * std::cosh(t) * c * (1.0 - c) * v;
    };

    bool ok = false;
    double h = 1.0;
    double sum = weighted(0.0, ok);
    double l1 = std::fabs(sum);
    for (long k = 1; k * h <= t_cut; ++k) {
        double t = k * h;
        double gp = weighted(t, ok);
        if (ok) { sum += gp; l1 += std::fabs(gp); }
        double gm = weighted(-t, ok);
        if (ok) { sum += gm; l1 += std::fabs(gm); }
    }
    double estimate = h * sum;
    double l1_norm = h * l1;
    double level_error = std::numeric_limits<double>::infinity();

    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = false;
    for (int level = 1; level <= 24; ++level) {
        h *= 0.5;
        double odd_sum = 0.0;
        double odd_l1 = 0.0;
        for (long k = 1; k * h <= t_cut; k += 2) {
            double t = k * h;
            double gp = weighted(t, ok);
            if (ok) { odd_sum += gp; odd_l1 += std::fabs(gp); }
            double gm = weighted(-t, ok);
            if (ok) { odd_sum += gm; odd_l1 += std::fabs(gm); }
        }
        double refined = 0.5 * estimate + h * odd_sum;
        l1_norm = 0.5 * l1_norm + h * odd_l1;
        level_error = std::fabs(refined - estimate);
        estimate = refined;
        if (level >= 2 && level_error <= std::max(0.5 * tol, 4.0 * eps * l1_norm)) {
            converged = true;
            break;
        }
        if (evals > max_evaluations)
            throw DivergenceError("integration did not converge within evaluation budget",
                                  estimate, level_error);
    }
    if (!converged)
        throw DivergenceError("integration did not converge within level budget",
                              estimate, level_error);

    TailEstimate left = endpoint_tail(f, false, kComplementCut, estimate, tol);
    TailEstimate right = endpoint_tail(f, true, kComplementCut, estimate, tol);
    evals += 6;

    IntegrationResult result;
    result.value = estimate + left.value + right.value;
    result.error_estimate = level_error + 4.0 * eps * l1_norm + left.uncertainty + right.uncertainty;
    result.evaluations = evals;
    return result;
}

IntegrationResult integrate_interval(const RealFunction& f, double a, double b,
                                     double tol, std::size_t max_evaluations) {
    if (!(a <= b)) throw std::invalid_argument("integrate_interval: requires a <= b");
    if (a == b) return IntegrationResult{0.0, 0.0, 0};
    double width = b - a;
    auto mapped = [&](double s) { return f(a + width * s); };
    IntegrationResult inner = integrate_open(mapped, tol / width, max_evaluations);
    inner.value *= width;
    inner.error_estimate *= width;
    return inner;
}

} // namespace qmvt
