#include "qmvt/report.hpp"

#include <algorithm>
#include <cmath>

namespace qmvt {

namespace {

nlohmann::ordered_json mc_json(const std::optional<MonteCarloEstimate>& mc) {
    if (!mc) return nullptr;
    return {{"estimate", mc->estimate},
            {"standard_error", mc->standard_error},
            {"samples", mc->samples}};
}

} // namespace

bool VerificationReport::hypotheses_pass() const {
    return std::all_of(hypothesis_checks.begin(), hypothesis_checks.end(),
                       [](const HypothesisCheck& c) { return c.pass; });
}

bool VerificationReport::verified() const {
    double allowance = std::max(tol_identity, 3.0 * (lhs_err + rhs_err));
    return std::isfinite(residual_abs) && residual_abs <= allowance;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["lhs"] = lhs;
    doc["rhs"] = rhs;
    doc["residual_abs"] = residual_abs;
    doc["residual_rel"] = residual_rel;
    doc["lhs_err"] = lhs_err;
    doc["rhs_err"] = rhs_err;
    if (mc_lhs || mc_rhs) {
        doc["mc"] = {{"lhs", mc_json(mc_lhs)}, {"rhs", mc_json(mc_rhs)}};
    } else {
        doc["mc"] = nullptr;
    }
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : hypothesis_checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}});
    }
    doc["hypothesis_checks"] = checks;
    doc["scenario"] = scenario.is_null() ? nlohmann::ordered_json(nullptr) : scenario;
    return doc;
}

std::string VerificationReport::to_string(int indent) const { return to_json().dump(indent); }

} // namespace qmvt
