#include "qmvt/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmvt {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& message) {
    throw std::invalid_argument("scenario: " + where + ": " + message);
}

const Json& require_object(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected a JSON object");
    return j;
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail(where, "unknown key \"" + it.key() + "\"");
    }
}

const Json& require_key(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing required key \"") + key + "\"");
    return *it;
}

double require_finite_number(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "value must be finite");
    return v;
}

long long require_integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::string require_string(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

QuantileDistribution parse_distribution(const Json& spec, const std::string& where) {
    require_object(spec, where);
    std::string name = require_string(require_key(spec, "name", where), where + ".name");

    QuantileDistribution base = [&]() -> QuantileDistribution {
        if (name == "uniform01") {
            check_keys(spec, {"name", "scale"}, where);
            return make_uniform01();
        }
        if (name == "exponential") {
            check_keys(spec, {"name", "rate", "scale"}, where);
            double rate = require_finite_number(require_key(spec, "rate", where), where + ".rate");
            if (!(rate > 0.0)) fail(where + ".rate", "rate must be positive");
            return make_exponential(rate);
        }
        fail(where + ".name",
             "unknown distribution \"" + name + "\" (expected uniform01 or exponential)");
    }();

    if (auto it = spec.find("scale"); it != spec.end()) {
        double c = require_finite_number(*it, where + ".scale");
        if (!(c > 0.0)) fail(where + ".scale", "scale must be positive");
        return make_scaled(base, c);
    }
    return base;
}

DistortionFunction parse_distortion(const Json& spec, const std::string& where, int depth = 0) {
    if (depth > 8) fail(where, "compose nesting too deep");
    require_object(spec, where);
    std::string name = require_string(require_key(spec, "name", where), where + ".name");

    if (name == "identity") {
        check_keys(spec, {"name"}, where);
        return DistortionFunction::identity();
    }
    if (name == "power") {
        check_keys(spec, {"name", "alpha"}, where);
        double alpha = require_finite_number(require_key(spec, "alpha", where), where + ".alpha");
        if (!(alpha > 0.0)) fail(where + ".alpha", "alpha must be positive");
        return DistortionFunction::power(alpha);
    }
    if (name == "dual_power") {
        check_keys(spec, {"name", "m"}, where);
        long long m = require_integer(require_key(spec, "m", where), where + ".m");
        if (m < 1 || m > 1000000) fail(where + ".m", "m must be a positive integer");
        return DistortionFunction::dual_power(static_cast<int>(m));
    }
    if (name == "cte") {
        check_keys(spec, {"name", "p"}, where);
        double p = require_finite_number(require_key(spec, "p", where), where + ".p");
        if (!(p >= 0.0 && p < 1.0)) fail(where + ".p", "p must lie in [0,1)");
        return DistortionFunction::cte(p);
    }
    if (name == "compose") {
        check_keys(spec, {"name", "parts"}, where);
        const Json& parts = require_key(spec, "parts", where);
        if (!parts.is_array() || parts.size() < 2)
            fail(where + ".parts", "expected an array of at least two distortions");
        DistortionFunction result = parse_distortion(
            parts[parts.size() - 1], where + ".parts[" + std::to_string(parts.size() - 1) + "]",
            depth + 1);
        for (std::size_t i = parts.size() - 1; i-- > 0;) {
            DistortionFunction outer =
                parse_distortion(parts[i], where + ".parts[" + std::to_string(i) + "]", depth + 1);
            result = compose(outer, result);
        }
        return result;
    }
    fail(where + ".name", "unknown distortion \"" + name +
                              "\" (expected identity, power, dual_power, cte, compose)");
}

VerifyOptions parse_numerics(const Json* spec, const std::string& where) {
    VerifyOptions opts;
    if (const char* env = std::getenv("QMVT_TOL_QUAD")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !std::isfinite(v) || !(v > 0.0))
            throw std::invalid_argument(
                "QMVT_TOL_QUAD must be a positive finite number, got \"" + std::string(env) +
                "\"");
        opts.tol_quad = v;
    }
    if (spec == nullptr) return opts;

    require_object(*spec, where);
    check_keys(*spec, {"tol_quad", "tol_identity", "grid_size", "mc_samples", "seed"}, where);
    if (auto it = spec->find("tol_quad"); it != spec->end()) {
        double v = require_finite_number(*it, where + ".tol_quad");
        if (!(v > 0.0)) fail(where + ".tol_quad", "must be positive");
        opts.tol_quad = v;
    }
    if (auto it = spec->find("tol_identity"); it != spec->end()) {
        double v = require_finite_number(*it, where + ".tol_identity");
        if (!(v > 0.0)) fail(where + ".tol_identity", "must be positive");
        opts.tol_identity = v;
    }
    if (auto it = spec->find("grid_size"); it != spec->end()) {
        long long v = require_integer(*it, where + ".grid_size");
        if (v < 2 || v > 10000000) fail(where + ".grid_size", "must lie in 2..10^7");
        opts.grid_size = static_cast<std::size_t>(v);
    }
    if (auto it = spec->find("mc_samples"); it != spec->end()) {
        long long v = require_integer(*it, where + ".mc_samples");
        if (v < 0) fail(where + ".mc_samples", "must be nonnegative");
        opts.mc_samples = static_cast<std::uint64_t>(v);
    }
    if (auto it = spec->find("seed"); it != spec->end()) {
        if (!it->is_number_integer() && !it->is_number_unsigned())
            fail(where + ".seed", "expected an integer");
        if (it->is_number_integer() && it->get<long long>() < 0)
            fail(where + ".seed", "must be nonnegative");
        opts.seed = it->get<std::uint64_t>();
    }
    return opts;
}

std::string format_t(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

} // namespace

Scenario parse_scenario(const nlohmann::ordered_json& doc) {
    const std::string where = "top level";
    require_object(doc, where);

    Scenario s;
    s.echo = doc;
    s.type = require_string(require_key(doc, "type", where), "type");

    const Json* numerics = nullptr;
    if (auto it = doc.find("numerics"); it != doc.end()) numerics = &*it;
    s.numerics = parse_numerics(numerics, "numerics");

    s.base = parse_distribution(require_key(doc, "base", where), "base");
    s.g = TestFunction::by_name(require_string(require_key(doc, "g", where), "g"));

    if (s.type == "mvt") {
        check_keys(doc, {"type", "base", "upper", "g", "numerics"}, where);
        s.upper = parse_distribution(require_key(doc, "upper", where), "upper");
        s.summary = "mvt lower=" + s.base->label() + " upper=" + s.upper->label() +
                    " g=" + s.g->label();
    } else if (s.type == "theorem1") {
        check_keys(doc, {"type", "base", "h", "l", "g", "numerics"}, where);
        s.h = parse_distortion(require_key(doc, "h", where), "h");
        s.l = parse_distortion(require_key(doc, "l", where), "l");
        s.summary = "theorem1 base=" + s.base->label() + " h=" + s.h->label() +
                    " l=" + s.l->label() + " g=" + s.g->label();
    } else if (s.type == "theorem2") {
        check_keys(doc, {"type", "base", "h", "t", "g", "numerics"}, where);
        s.h = parse_distortion(require_key(doc, "h", where), "h");
        s.t = require_finite_number(require_key(doc, "t", where), "t");
        if (!(s.t >= 0.0)) fail("t", "age must be nonnegative");
        s.summary = "theorem2 base=" + s.base->label() + " h=" + s.h->label() +
                    " t=" + format_t(s.t) + " g=" + s.g->label();
    } else if (s.type == "taylor") {
        check_keys(doc, {"type", "base", "n", "g", "numerics"}, where);
        long long n = require_integer(require_key(doc, "n", where), "n");
        if (n < 1 || n > s.g->max_order())
            fail("n", "expansion order must lie in 1.." + std::to_string(s.g->max_order()));
        s.taylor_order = static_cast<int>(n);
        s.summary = "taylor base=" + s.base->label() + " n=" + std::to_string(s.taylor_order) +
                    " g=" + s.g->label();
    } else if (s.type == "lorenz") {
        check_keys(doc, {"type", "base", "g", "numerics"}, where);
        s.summary = "lorenz base=" + s.base->label() + " g=" + s.g->label();
    } else {
        fail("type", "unknown scenario type \"" + s.type +
                         "\" (expected mvt, theorem1, theorem2, taylor, lorenz)");
    }
    return s;
}

Scenario parse_scenario_text(const std::string& text) {
    return parse_scenario(nlohmann::ordered_json::parse(text));
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read scenario file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

VerificationReport run_scenario(const Scenario& s) {
    VerificationReport report;
    if (s.type == "mvt") {
        report = verify_mvt(*s.base, *s.upper, *s.g, s.numerics);
    } else if (s.type == "theorem1") {
        report = verify_theorem1(*s.base, *s.h, *s.l, *s.g, s.numerics);
    } else if (s.type == "theorem2") {
        report = verify_theorem2(*s.base, *s.h, s.t, *s.g, s.numerics);
    } else if (s.type == "taylor") {
        report = verify_taylor(*s.base, *s.g, s.taylor_order, s.numerics);
    } else if (s.type == "lorenz") {
        report = verify_mvt(make_degenerate_at_zero(), *s.base, *s.g, s.numerics);
    } else {
        throw std::logic_error("run_scenario: unparsed scenario");
    }
    report.scenario = s.echo;
    return report;
}

VerificationReport monte_carlo_check(const Scenario& s, std::uint64_t samples,
                                     std::uint64_t seed) {
    if (samples < 100)
        throw std::invalid_argument("monte_carlo_check: samples must be at least 100");
    Scenario with_mc = s;
    with_mc.numerics.mc_samples = samples;
    with_mc.numerics.seed = seed;
    return run_scenario(with_mc);
}

BridgeDistribution scenario_bridge(const Scenario& s) {
    if (s.type == "mvt") return bridge(*s.base, *s.upper);
    if (s.type == "theorem1") return distorted_bridge(*s.base, *s.h, *s.l);
    if (s.type == "theorem2") return nbu_bridge(*s.base, *s.h, s.t);
    if (s.type == "lorenz") return lorenz(*s.base);
    throw std::invalid_argument(
        "a taylor scenario does not define a bridge distribution; density and sampling need "
        "a mvt, theorem1, theorem2 or lorenz scenario");
}

} // namespace qmvt
