#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qmvt/quantile_distribution.hpp"

using namespace qmvt;

TEST_CASE("uniform01 basics") {
    QuantileDistribution x = make_uniform01();
    CHECK(x.quantile(0.3) == doctest::Approx(0.3));
    CHECK(x.quantile_density(0.7) == doctest::Approx(1.0));
    CHECK(x.cdf(0.25) == doctest::Approx(0.25));
    CHECK(x.survival(0.25) == doctest::Approx(0.75));
    CHECK(x.mean() == doctest::Approx(0.5));
    CHECK(x.support_lower() == 0.0);
    CHECK(x.in_family_d());
    CHECK_FALSE(x.is_degenerate_at_zero());
}

TEST_CASE("exponential closed forms") {
    QuantileDistribution x = make_exponential(2.0);
    CHECK(x.quantile(0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
    CHECK(x.quantile_density(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x.cdf(1.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    CHECK(x.survival(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(x.mean() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(x.in_family_d());

    // Quantile route to the mean agrees with the closed form.
    CHECK(mean_via_quantile(x) == doctest::Approx(0.5).epsilon(1e-9));

    // cdf(quantile(u)) = u round trip.
    for (double u : {0.01, 0.2, 0.5, 0.9, 0.999})
        CHECK(x.cdf(x.quantile(u)) == doctest::Approx(u).epsilon(1e-12));

    CHECK_THROWS_AS(make_exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_exponential(-1.0), std::invalid_argument);
}

TEST_CASE("scaled distribution") {
    QuantileDistribution x = make_scaled(make_exponential(1.0), 2.0);
    CHECK(x.quantile(0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(x.mean() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(x.cdf(2.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(x.in_family_d());
    CHECK_THROWS_AS(make_scaled(x, 0.0), std::invalid_argument);
}

TEST_CASE("degenerate endpoint distribution") {
    QuantileDistribution z = make_degenerate_at_zero();
    CHECK(z.quantile(0.5) == 0.0);
    CHECK(z.quantile_density(0.5) == 0.0);
    CHECK(z.mean() == 0.0);
    CHECK(z.is_degenerate_at_zero());
    CHECK_FALSE(z.in_family_d());
}

TEST_CASE("residual lifetime") {
    SUBCASE("uniform base becomes a shrunk uniform") {
        QuantileDistribution r = residual_lifetime(make_uniform01(), 0.5);
        for (double u : {0.1, 0.5, 0.9})
            CHECK(r.quantile(u) == doctest::Approx(0.5 * u).epsilon(1e-12));
        CHECK(r.mean() == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(r.in_family_d());
    }
    SUBCASE("exponential base is memoryless") {
        QuantileDistribution x = make_exponential(1.0);
        QuantileDistribution r = residual_lifetime(x, 1.0);
        for (double u : {0.05, 0.3, 0.6, 0.95})
            CHECK(r.quantile(u) == doctest::Approx(x.quantile(u)).epsilon(1e-12));
    }
    SUBCASE("age zero returns the distribution itself") {
        QuantileDistribution x = make_uniform01();
        CHECK(residual_lifetime(x, 0.0).quantile(0.3) == doctest::Approx(0.3));
    }
    SUBCASE("conditioning beyond the support is rejected") {
        CHECK_THROWS_AS(residual_lifetime(make_uniform01(), 1.5), std::domain_error);
        CHECK_THROWS_AS(residual_lifetime(make_uniform01(), -0.1), std::invalid_argument);
    }
}

TEST_CASE("make_from_quantile accepts a consistent pair") {
    auto q = [](double u) { return -std::log1p(-u); };
    auto qd = [](double u) { return 1.0 / (1.0 - u); };
    QuantileDistribution x = make_from_quantile(q, qd, "rebuilt");
    CHECK(x.cdf(1.2) == doctest::Approx(1.0 - std::exp(-1.2)).epsilon(1e-9));
    CHECK(x.survival(0.4) == doctest::Approx(std::exp(-0.4)).epsilon(1e-9));
    CHECK(x.mean() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(x.in_family_d());
    CHECK(x.label() == "rebuilt");
}

TEST_CASE("make_from_quantile rejects inconsistent input") {
    SUBCASE("decreasing quantile") {
        CHECK_THROWS_AS(make_from_quantile([](double u) { return 1.0 - u; },
                                           [](double) { return -1.0; }),
                        std::invalid_argument);
    }
    SUBCASE("density that is not the derivative of the quantile") {
        CHECK_THROWS_AS(make_from_quantile([](double u) { return u * u; },
                                           [](double) { return 1.0; }),
                        std::invalid_argument);
    }
    SUBCASE("jump in the quantile between grid points") {
        // Flat cdf segment: Q jumps by 1 at u = 0.5 + pi*1e-4, which no
        // validation grid point lands on. The cell-increment check has to
        // catch it.
        double where = 0.5 + 3.14159e-4;
        auto q = [where](double u) { return u + (u > where ? 1.0 : 0.0); };
        auto qd = [](double) { return 1.0; };
        CHECK_THROWS_AS(make_from_quantile(q, qd), std::invalid_argument);
    }
    SUBCASE("null callables") {
        CHECK_THROWS_AS(make_from_quantile(nullptr, [](double) { return 1.0; }),
                        std::invalid_argument);
    }
}
