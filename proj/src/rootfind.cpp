#include "qmvt/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace qmvt {

double solve_monotone(const std::function<double(double)>& f, double target,
                      double lo, double hi, double xtol) {
    if (!(lo <= hi)) throw std::invalid_argument("solve_monotone: empty bracket");
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo > 0.0 || fhi < 0.0) {
        // Allow a hair of slack for flat-at-the-ends curves before giving up.
        if (flo > 1e-12 || fhi < -1e-12)
            throw std::invalid_argument("solve_monotone: bracket does not straddle target");
        if (flo > 0.0) return lo;
        if (fhi < 0.0) return hi;
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    for (int iter = 0; iter < 200; ++iter) {
        double width = hi - lo;
        if (width <= xtol * (1.0 + std::fabs(lo) + std::fabs(hi))) break;

        // Secant candidate, accepted only if it lands comfortably interior.
        double mid = 0.5 * (lo + hi);
        double x = mid;
        double denom = fhi - flo;
        if (denom > 0.0) {
            double s = lo - flo * width / denom;
            if (s > lo + 0.05 * width && s < hi - 0.05 * width) x = s;
        }
        double fx = f(x) - target;
        if (fx == 0.0) return x;
        if (fx < 0.0) { lo = x; flo = fx; } else { hi = x; fhi = fx; }
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> bracket_increasing(const std::function<double(double)>& f,
                                             double target, double start,
                                             double initial_step, double limit) {
    double lo = start;
    double step = initial_step;
    double hi = start + step;
    while (hi - start <= limit) {
        if (f(hi) >= target) return {lo, hi};
        lo = hi;
        step *= 2.0;
        hi = start + step;
    }
    throw std::runtime_error("bracket_increasing: target not reached within limit");
}

} // namespace qmvt
