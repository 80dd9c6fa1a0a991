#pragma once

#include <stdexcept>
#include <string>

namespace qmvt {

// Thrown when an adaptive integration fails to settle within its evaluation
// budget, or when the integrand looks non-integrable at an endpoint. The
// partial value is whatever the last refinement level produced; it is kept
// around because it is often useful in a diagnostic message.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double partial_value, double error_estimate)
        : std::runtime_error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_value_;
    double error_estimate_;
};

} // namespace qmvt
