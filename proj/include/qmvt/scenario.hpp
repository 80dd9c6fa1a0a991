#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qmvt/bridge.hpp"
#include "qmvt/verify.hpp"

namespace qmvt {

// A parsed scenario document. The schema is strict: unknown keys are
// rejected with the offending key named, so a typo cannot silently fall
// back to a default. Shape by "type":
//
//   {"type": "mvt",      "base": DIST, "upper": DIST,            "g": G}
//   {"type": "theorem1", "base": DIST, "h": DTN, "l": DTN,       "g": G}
//   {"type": "theorem2", "base": DIST, "h": DTN, "t": number,    "g": G}
//   {"type": "taylor",   "base": DIST, "n": integer,             "g": G}
//   {"type": "lorenz",   "base": DIST,                           "g": G}
//
// DIST is {"name": "uniform01"} or {"name": "exponential", "rate": r},
// either with an optional "scale": c. DTN is {"name": "identity"},
// {"name": "power", "alpha": a}, {"name": "dual_power", "m": int},
// {"name": "cte", "p": p}, or {"name": "compose", "parts": [DTN, ...]}
// composing left-to-right outermost-first. G is one of "u^1".."u^5",
// "exp", "sin". Every scenario takes an optional "numerics" object with
// keys tol_quad, tol_identity, grid_size, mc_samples, seed.
//
// The default tol_quad is 1e-9; the environment variable QMVT_TOL_QUAD
// overrides the default and an explicit "numerics.tol_quad" overrides
// both.
struct Scenario {
    std::string type;
    std::optional<QuantileDistribution> base;
    std::optional<QuantileDistribution> upper; // mvt only
    std::optional<DistortionFunction> h;       // theorem1, theorem2
    std::optional<DistortionFunction> l;       // theorem1 only
    double t = 0.0;                            // theorem2 only
    int taylor_order = 1;                      // taylor only
    std::optional<TestFunction> g;
    VerifyOptions numerics;
    nlohmann::ordered_json echo; // the document as parsed, for reports
    std::string summary;         // one-line description
};

// Throw std::invalid_argument with a path-qualified message on any schema
// violation; nlohmann parse errors propagate from the text/file forms.
Scenario parse_scenario(const nlohmann::ordered_json& doc);
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

// Dispatch to the matching verification; the report's scenario field is
// the parsed document.
VerificationReport run_scenario(const Scenario& s);

// Same scenario with a Monte Carlo cross-check attached. samples >= 100.
VerificationReport monte_carlo_check(const Scenario& s, std::uint64_t samples,
                                     std::uint64_t seed);

// The bridge law the scenario's identity averages over. Taylor scenarios
// have no single bridge (the remainder uses the Lorenz law internally) and
// are rejected with std::invalid_argument.
BridgeDistribution scenario_bridge(const Scenario& s);

} // namespace qmvt
