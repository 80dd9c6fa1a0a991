#include <cstdlib>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "qmvt/scenario.hpp"
#include "qmvt/suite.hpp"

using namespace qmvt;

namespace {

// Scoped environment override so tolerance-related tests cannot leak into
// each other.
struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value)
            setenv("QMVT_TOL_QUAD", value, 1);
        else
            unsetenv("QMVT_TOL_QUAD");
    }
    ~EnvGuard() { unsetenv("QMVT_TOL_QUAD"); }
};

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("parsing a well-formed scenario") {
    Scenario s = parse_scenario_text(R"({
        "type": "theorem1",
        "base": {"name": "exponential", "rate": 1.0},
        "h": {"name": "dual_power", "m": 1},
        "l": {"name": "dual_power", "m": 2},
        "g": "u^1",
        "numerics": {"tol_quad": 1e-10, "grid_size": 256}
    })");
    CHECK(s.type == "theorem1");
    CHECK(s.summary == "theorem1 base=exponential(rate=1) h=dual_power(1) l=dual_power(2) g=u^1");
    CHECK(s.numerics.tol_quad == 1e-10);
    CHECK(s.numerics.grid_size == 256);
    CHECK(s.numerics.tol_identity == 1e-6);
    CHECK(s.numerics.mc_samples == 0);
    CHECK(s.echo["type"] == "theorem1");
}

TEST_CASE("schema violations are rejected with the offending key named") {
    CHECK(message_of([] {
              parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2","extra":1})");
          }).find("extra") != std::string::npos);
    CHECK(message_of([] {
              parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01","rate":2.0},"g":"u^2"})");
          }).find("rate") != std::string::npos);
    CHECK_THROWS_AS(parse_scenario_text(R"({"type":"theorem1","base":{"name":"uniform01"},"g":"u^2"})"),
                    std::invalid_argument); // missing h and l
    CHECK_THROWS_AS(parse_scenario_text(R"({"type":"wat","base":{"name":"uniform01"},"g":"u^2"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_text(R"({"type":"lorenz","base":{"name":"cauchy"},"g":"u^2"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^9"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_text("not json at all"), nlohmann::json::exception);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":1.0},"t":0.5,"g":"u^2"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":0.5},"t":-1.0,"g":"u^2"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"theorem1","base":{"name":"uniform01"},"h":{"name":"dual_power","m":2.5},"l":{"name":"identity"},"g":"u^2"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(R"({"type":"taylor","base":{"name":"uniform01"},"n":6,"g":"u^2"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"mvt","base":{"name":"uniform01"},"upper":{"name":"uniform01","scale":-2.0},"g":"u^2"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2","numerics":{"seed":-1}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2","numerics":{"grid_size":1.5}})"),
        std::invalid_argument);
    // compose needs at least two parts.
    CHECK_THROWS_AS(
        parse_scenario_text(
            R"({"type":"theorem1","base":{"name":"uniform01"},"h":{"name":"compose","parts":[{"name":"identity"}]},"l":{"name":"identity"},"g":"u^2"})"),
        std::invalid_argument);
}

TEST_CASE("compose parses outermost first") {
    Scenario s = parse_scenario_text(R"({
        "type": "theorem1",
        "base": {"name": "uniform01"},
        "h": {"name": "compose", "parts": [{"name": "power", "alpha": 2.0},
                                            {"name": "dual_power", "m": 2}]},
        "l": {"name": "identity"},
        "g": "u^2"
    })");
    double t = 0.4;
    double inner = 1.0 - 0.6 * 0.6;
    CHECK(s.h->apply(t) == doctest::Approx(inner * inner).epsilon(1e-14));
}

TEST_CASE("environment default for the quadrature tolerance") {
    SUBCASE("environment overrides the built-in default") {
        EnvGuard env("1e-7");
        Scenario s =
            parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2"})");
        CHECK(s.numerics.tol_quad == 1e-7);
    }
    SUBCASE("an explicit value beats the environment") {
        EnvGuard env("1e-7");
        Scenario s = parse_scenario_text(
            R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2","numerics":{"tol_quad":1e-11}})");
        CHECK(s.numerics.tol_quad == 1e-11);
    }
    SUBCASE("malformed environment values are an error") {
        EnvGuard env("fast");
        CHECK_THROWS_AS(
            parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2"})"),
            std::invalid_argument);
    }
    SUBCASE("without the variable the default applies") {
        EnvGuard env(nullptr);
        Scenario s =
            parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2"})");
        CHECK(s.numerics.tol_quad == 1e-9);
    }
}

TEST_CASE("running a parsed scenario attaches the echo") {
    Scenario s = parse_scenario_text(
        R"({"type":"mvt","base":{"name":"uniform01"},"upper":{"name":"uniform01","scale":2.0},"g":"u^2"})");
    VerificationReport r = run_scenario(s);
    CHECK(r.verified());
    CHECK(r.scenario == s.echo);
    CHECK(r.to_json()["scenario"]["upper"]["scale"] == 2.0);
}

TEST_CASE("monte_carlo_check wraps a scenario") {
    Scenario s = parse_scenario_text(
        R"({"type":"taylor","base":{"name":"exponential","rate":1.0},"n":2,"g":"u^2"})");
    CHECK_THROWS_AS(monte_carlo_check(s, 99, 1), std::invalid_argument);
    VerificationReport r = monte_carlo_check(s, 2000, 5);
    REQUIRE(r.mc_lhs.has_value());
    CHECK(r.mc_lhs->samples == 2000);
    CHECK(std::fabs(r.mc_lhs->estimate - r.lhs) <= 4.0 * r.mc_lhs->standard_error);
}

TEST_CASE("scenario_bridge builds the construction behind the identity") {
    Scenario tail = parse_scenario_text(
        R"({"type":"theorem2","base":{"name":"uniform01"},"h":{"name":"cte","p":0.5},"t":0.5,"g":"u^2"})");
    BridgeDistribution b = scenario_bridge(tail);
    CHECK(b.density(0.5) == doctest::Approx(2.0 * (0.5 + 0.25) / 1.5).epsilon(1e-8));

    Scenario taylor = parse_scenario_text(
        R"({"type":"taylor","base":{"name":"uniform01"},"n":2,"g":"u^2"})");
    CHECK_THROWS_AS(scenario_bridge(taylor), std::invalid_argument);

    Scenario lz =
        parse_scenario_text(R"({"type":"lorenz","base":{"name":"uniform01"},"g":"u^2"})");
    CHECK(scenario_bridge(lz).density(0.25) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("built-in suite parses, spans the constructions, and verifies") {
    std::vector<std::string> texts = builtin_suite_texts();
    CHECK(texts.size() == 15);
    std::vector<Scenario> suite = builtin_suite();
    REQUIRE(suite.size() == texts.size());

    int theorem1 = 0, theorem2 = 0, mvt = 0, taylor = 0;
    for (const Scenario& s : suite) {
        if (s.type == "theorem1") ++theorem1;
        if (s.type == "theorem2") ++theorem2;
        if (s.type == "mvt") ++mvt;
        if (s.type == "taylor") ++taylor;
    }
    CHECK(theorem1 == 6);
    CHECK(theorem2 == 3);
    CHECK(mvt == 3);
    CHECK(taylor == 3);
}

TEST_CASE("documented discrepancies are demonstrated numerically") {
    std::vector<ErratumFinding> findings = erratum_findings();
    REQUIRE(findings.size() == 5);
    for (const ErratumFinding& f : findings) {
        INFO(f.id, ": ", f.evidence);
        CHECK(f.demonstrated);
        CHECK_FALSE(f.evidence.empty());
        CHECK_FALSE(f.corrected.empty());
        CHECK_FALSE(f.variant.empty());
    }
    CHECK(findings[0].id == "taylor-missing-factorials");
    CHECK(findings[4].id == "conditional-tail-density-sign");
}
