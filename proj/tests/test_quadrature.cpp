#include <cmath>

#include "doctest.h"
#include "qmvt/errors.hpp"
#include "qmvt/quadrature.hpp"

using qmvt::integrate_interval;
using qmvt::integrate_open;

TEST_CASE("integrate_open on smooth integrands") {
    CHECK(integrate_open([](double) { return 1.0; }).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_open([](double u) { return u * u; }).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate_open([](double u) { return std::exp(u); }).value ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("integrate_open handles integrable endpoint singularities") {
    // 1/sqrt(1-u) integrates to 2; the endpoint tail beyond the last
    // representable node carries about 2e-8 of mass, so this is the case
    // that needs the power-law tail estimate rather than bare truncation.
    auto f = [](double u) { return 1.0 / std::sqrt(1.0 - u); };
    qmvt::IntegrationResult r = integrate_open(f, 1e-9);
    CHECK(std::fabs(r.value - 2.0) <= 1e-8);

    CHECK(std::fabs(integrate_open([](double u) { return std::log(u); }).value + 1.0) <= 1e-9);
    CHECK(std::fabs(integrate_open([](double u) { return std::pow(u, -0.3); }).value -
                    1.0 / 0.7) <= 1e-8);
    // Singular at both ends.
    CHECK(std::fabs(integrate_open([](double u) {
                        return 1.0 / std::sqrt(u) + 1.0 / std::sqrt(1.0 - u);
                    }).value -
                    4.0) <= 2e-8);
}

TEST_CASE("integrate_open error estimate brackets the true error") {
    auto f = [](double u) { return std::log(u) * std::log(1.0 - u); };
    double exact = 2.0 - 3.141592653589793 * 3.141592653589793 / 6.0;
    qmvt::IntegrationResult r = integrate_open(f, 1e-10);
    CHECK(std::fabs(r.value - exact) <= std::max(r.error_estimate * 10.0, 1e-9));
    CHECK(r.evaluations > 0);
}

TEST_CASE("integrate_open reports divergence") {
    CHECK_THROWS_AS(integrate_open([](double u) { return 1.0 / u; }), qmvt::DivergenceError);
    CHECK_THROWS_AS(integrate_open([](double u) { return 1.0 / (1.0 - u); }),
                    qmvt::DivergenceError);
    try {
        integrate_open([](double u) { return 1.0 / u; });
    } catch (const qmvt::DivergenceError& e) {
        CHECK(std::isfinite(e.partial_value()));
        CHECK(e.partial_value() > 10.0);
    }
}

TEST_CASE("integrate_interval maps finite intervals") {
    CHECK(integrate_interval([](double x) { return x * x; }, 1.0, 3.0).value ==
          doctest::Approx(26.0 / 3.0).epsilon(1e-12));
    CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, 3.141592653589793).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_interval([](double) { return 5.0; }, 2.0, 2.0).value == 0.0);
    // Endpoint singularity inside a mapped interval.
    CHECK(std::fabs(integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0)
                        .value -
                    4.0) <= 1e-7);
}
