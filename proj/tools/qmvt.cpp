#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qmvt/errors.hpp"
#include "qmvt/scenario.hpp"
#include "qmvt/suite.hpp"

namespace {

// Exit codes: 0 identity verified and all hypothesis checks pass; 1 the
// residual exceeded its tolerance or a defining integral diverged; 2 a
// hypothesis or domain precondition failed; 3 usage, schema or input
// errors. A failed hypothesis wins over a failed residual, since the
// residual of a broken pair is diagnostic output, not a verdict.
int exit_for(const qmvt::VerificationReport& report) {
    if (!report.hypotheses_pass()) return 2;
    return report.verified() ? 0 : 1;
}

int run_verify(const std::string& path, const CLI::Option* mc_opt, std::uint64_t mc_samples,
               const CLI::Option* seed_opt, std::uint64_t seed) {
    qmvt::Scenario s = qmvt::parse_scenario_file(path);
    if (*mc_opt) s.numerics.mc_samples = mc_samples;
    if (*seed_opt) s.numerics.seed = seed;
    qmvt::VerificationReport report = qmvt::run_scenario(s);
    std::cout << report.to_string(2) << "\n";
    return exit_for(report);
}

int run_density(const std::string& path, std::uint64_t points) {
    qmvt::Scenario s = qmvt::parse_scenario_file(path);
    qmvt::BridgeDistribution b = qmvt::scenario_bridge(s);
    std::printf("x,density,cdf\n");
    for (std::uint64_t i = 0; i < points; ++i) {
        double x = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        std::printf("%.17g,%.17g,%.17g\n", x, b.density(x), b.cdf(x));
    }
    return 0;
}

int run_sample(const std::string& path, std::uint64_t count, const CLI::Option* seed_opt,
               std::uint64_t seed) {
    qmvt::Scenario s = qmvt::parse_scenario_file(path);
    qmvt::BridgeDistribution b = qmvt::scenario_bridge(s);
    std::uint64_t use_seed = *seed_opt ? seed : s.numerics.seed;
    for (double d : qmvt::sample(b, count, use_seed)) std::printf("%.17g\n", d);
    return 0;
}

int run_report(bool as_json) {
    std::vector<qmvt::Scenario> scenarios = qmvt::builtin_suite();
    std::vector<qmvt::VerificationReport> reports;
    reports.reserve(scenarios.size());
    std::size_t verified = 0;
    for (const qmvt::Scenario& s : scenarios) {
        reports.push_back(qmvt::run_scenario(s));
        const qmvt::VerificationReport& r = reports.back();
        if (r.verified() && r.hypotheses_pass()) ++verified;
    }
    std::vector<qmvt::ErratumFinding> errata = qmvt::erratum_findings();
    std::size_t demonstrated = 0;
    for (const qmvt::ErratumFinding& e : errata)
        if (e.demonstrated) ++demonstrated;

    bool all_ok = verified == scenarios.size() && demonstrated == errata.size();

    if (as_json) {
        nlohmann::ordered_json doc;
        doc["suite"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            doc["suite"].push_back({{"summary", scenarios[i].summary},
                                    {"verified", reports[i].verified()},
                                    {"hypotheses_pass", reports[i].hypotheses_pass()},
                                    {"report", reports[i].to_json()}});
        }
        doc["errata"] = nlohmann::ordered_json::array();
        for (const qmvt::ErratumFinding& e : errata) {
            doc["errata"].push_back({{"id", e.id},
                                     {"corrected", e.corrected},
                                     {"variant", e.variant},
                                     {"evidence", e.evidence},
                                     {"demonstrated", e.demonstrated}});
        }
        doc["all_verified"] = all_ok;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            const qmvt::VerificationReport& r = reports[i];
            bool ok = r.verified() && r.hypotheses_pass();
            std::printf("%-4s %-64s residual %.3g\n", ok ? "ok" : "FAIL",
                        scenarios[i].summary.c_str(), r.residual_abs);
            if (!r.hypotheses_pass()) {
                for (const qmvt::HypothesisCheck& c : r.hypothesis_checks)
                    if (!c.pass) std::printf("     failed check: %s\n", c.name.c_str());
            }
        }
        std::printf("\nerrata:\n");
        for (const qmvt::ErratumFinding& e : errata) {
            std::printf("%-4s %s\n", e.demonstrated ? "ok" : "FAIL", e.id.c_str());
            std::printf("     %s\n", e.evidence.c_str());
        }
        std::printf("\nsuite: %zu/%zu verified, errata: %zu/%zu demonstrated\n", verified,
                    scenarios.size(), demonstrated, errata.size());
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantile-law toolkit: verify mean-value identities, tabulate and sample "
                 "their bridge laws"};
    app.require_subcommand(1);

    std::string verify_path;
    std::uint64_t mc_samples = 0, verify_seed = 0;
    CLI::App* verify = app.add_subcommand("verify", "evaluate a scenario and print its report");
    verify->add_option("scenario", verify_path, "scenario JSON file")->required();
    CLI::Option* mc_opt = verify->add_option(
        "--mc-samples", mc_samples, "attach a Monte Carlo cross-check (at least 100 samples)");
    CLI::Option* verify_seed_opt =
        verify->add_option("--seed", verify_seed, "override the scenario's seed");

    std::string density_path;
    std::uint64_t points = 256;
    CLI::App* density = app.add_subcommand(
        "density", "print x,density,cdf rows for the scenario's bridge law");
    density->add_option("scenario", density_path, "scenario JSON file")->required();
    density->add_option("--points", points, "rows at x=(i+0.5)/points")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));

    std::string sample_path;
    std::uint64_t count = 1000, sample_seed = 0;
    CLI::App* sample = app.add_subcommand(
        "sample", "print inverse-transform draws from the scenario's bridge law");
    sample->add_option("scenario", sample_path, "scenario JSON file")->required();
    sample->add_option("--count", count, "number of draws");
    CLI::Option* sample_seed_opt =
        sample->add_option("--seed", sample_seed, "override the scenario's seed");

    bool as_json = false;
    CLI::App* report = app.add_subcommand(
        "report", "run the built-in suite and the errata demonstrations");
    report->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (app.got_subcommand(verify))
            return run_verify(verify_path, mc_opt, mc_samples, verify_seed_opt, verify_seed);
        if (app.got_subcommand(density)) return run_density(density_path, points);
        if (app.got_subcommand(sample))
            return run_sample(sample_path, count, sample_seed_opt, sample_seed);
        return run_report(as_json);
    } catch (const qmvt::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
