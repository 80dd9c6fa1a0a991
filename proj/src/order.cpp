#include "qmvt/order.hpp"

#include <stdexcept>
#include <vector>

namespace qmvt {

OrderCheckResult st_dominates(const QuantileDistribution& x, const QuantileDistribution& y,
                              std::size_t grid_size, double tol) {
    if (grid_size == 0) throw std::invalid_argument("st_dominates: empty grid");
    OrderCheckResult result;
    result.grid_size = grid_size;
    result.tolerance = tol;
    for (std::size_t i = 1; i <= grid_size; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(grid_size + 1);
        double excess = x.quantile(u) - y.quantile(u);
        if (excess > result.worst_violation) {
            result.worst_violation = excess;
            result.witness_a = u;
        }
    }
    result.holds = result.worst_violation <= tol;
    return result;
}

OrderCheckResult is_nbu(const QuantileDistribution& x, std::size_t grid_size, double tol) {
    if (grid_size == 0) throw std::invalid_argument("is_nbu: empty grid");
    OrderCheckResult result;
    result.grid_size = grid_size;
    result.tolerance = tol;

    std::vector<double> ages(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        double u = grid_size == 1 ? 0.5
                                  : 0.01 + 0.98 * static_cast<double>(i) /
                                               static_cast<double>(grid_size - 1);
        ages[i] = x.quantile(u);
    }
    for (double s : ages) {
        double fs = x.survival(s);
        for (double t : ages) {
            double excess = x.survival(s + t) - fs * x.survival(t);
            if (excess > result.worst_violation) {
                result.worst_violation = excess;
                result.witness_a = s;
                result.witness_b = t;
            }
        }
    }
    result.holds = result.worst_violation <= tol;
    return result;
}

} // namespace qmvt
