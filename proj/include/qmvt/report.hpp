#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmvt {

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

struct HypothesisCheck {
    std::string name;
    bool pass = true;
};

// Outcome of one identity verification. lhs/rhs are the two sides as
// evaluated by quadrature, with error estimates; mc carries optional
// Monte Carlo cross-checks of both sides. The report never hides a
// failure: hypothesis checks that did not hold are listed with pass =
// false and the residual is whatever it came out to be.
struct VerificationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual_abs = 0.0;
    double residual_rel = 0.0;
    double lhs_err = 0.0;
    double rhs_err = 0.0;
    std::optional<MonteCarloEstimate> mc_lhs;
    std::optional<MonteCarloEstimate> mc_rhs;
    std::vector<HypothesisCheck> hypothesis_checks;
    nlohmann::ordered_json scenario; // echo of the scenario that produced this

    // Acceptance threshold for |lhs - rhs|; kept out of the serialized form.
    double tol_identity = 1e-6;

    bool hypotheses_pass() const;
    bool verified() const;

    nlohmann::ordered_json to_json() const;
    std::string to_string(int indent = 2) const;
};

} // namespace qmvt
