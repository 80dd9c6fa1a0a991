#pragma once

#include <string>
#include <vector>

#include "qmvt/scenario.hpp"

namespace qmvt {

// The built-in verification suite: fifteen scenarios spanning every
// construction (distorted pairs, conditional-tail pairs, residual-lifetime
// pairs, plain pairs, Taylor expansions) over both base families. Returned
// as JSON texts so tests and the command line drive the exact same inputs
// through the public parser.
std::vector<std::string> builtin_suite_texts();
std::vector<Scenario> builtin_suite();

// A documented discrepancy between a published form of one of the
// identities and the form this library implements. `corrected` states the
// implemented convention, `variant` the form that does not hold, and
// `evidence` the numbers showing the variant failing while the corrected
// form verifies. `demonstrated` is the outcome of recomputing that
// evidence now.
struct ErratumFinding {
    std::string id;
    std::string corrected;
    std::string variant;
    std::string evidence;
    bool demonstrated = false;
};

std::vector<ErratumFinding> erratum_findings();

} // namespace qmvt
