#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qmvt/distortion.hpp"

using namespace qmvt;

TEST_CASE("power distortion") {
    DistortionFunction h = DistortionFunction::power(2.0);
    CHECK(h.apply(0.5) == doctest::Approx(0.25));
    CHECK(h.inverse(0.25) == doctest::Approx(0.5));
    CHECK(h.derivative(0.5) == doctest::Approx(1.0));
    CHECK(h.apply(0.0) == 0.0);
    CHECK(h.apply(1.0) == 1.0);
    CHECK_THROWS_AS(DistortionFunction::power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::power(-2.0), std::invalid_argument);
}

TEST_CASE("dual power distortion") {
    DistortionFunction h = DistortionFunction::dual_power(3);
    CHECK(h.apply(0.3) == doctest::Approx(1.0 - 0.7 * 0.7 * 0.7).epsilon(1e-14));
    CHECK(h.inverse(h.apply(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(h.derivative(0.3) == doctest::Approx(3.0 * 0.49).epsilon(1e-12));
    CHECK_THROWS_AS(DistortionFunction::dual_power(0), std::invalid_argument);
}

TEST_CASE("conditional tail distortion") {
    DistortionFunction h = DistortionFunction::cte(0.75);
    CHECK(h.apply(0.2) == doctest::Approx(0.8));
    CHECK(h.apply(0.25) == doctest::Approx(1.0));
    CHECK(h.apply(0.6) == doctest::Approx(1.0));
    // Generalized inverse: smallest preimage.
    CHECK(h.inverse(1.0) == doctest::Approx(0.25));
    CHECK(h.inverse(0.5) == doctest::Approx(0.125));
    CHECK(h.derivative(0.2) == doctest::Approx(4.0));
    CHECK(h.derivative(0.6) == 0.0);
    // Left value at the kink.
    CHECK(h.derivative(0.25) == doctest::Approx(4.0));
    CHECK_THROWS_AS(DistortionFunction::cte(1.0), std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::cte(-0.1), std::invalid_argument);

    // p = 0 conditions on nothing and acts as the identity.
    DistortionFunction id = DistortionFunction::cte(0.0);
    CHECK(id.apply(0.37) == doctest::Approx(0.37));
}

TEST_CASE("composition") {
    DistortionFunction c =
        compose(DistortionFunction::power(2.0), DistortionFunction::dual_power(2));
    double t = 0.4;
    double inner = 1.0 - 0.6 * 0.6;
    CHECK(c.apply(t) == doctest::Approx(inner * inner).epsilon(1e-14));
    CHECK(c.inverse(c.apply(t)) == doctest::Approx(t).epsilon(1e-10));
    // Chain rule against a finite difference.
    double s = 1e-6;
    double fd = (c.apply(t + s) - c.apply(t - s)) / (2.0 * s);
    CHECK(c.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(c.label() == "compose(power(2),dual_power(2))");
}

TEST_CASE("pointwise dominance of distortions") {
    CHECK(pointwise_dominates(DistortionFunction::power(2.0), DistortionFunction::power(1.0)));
    CHECK_FALSE(
        pointwise_dominates(DistortionFunction::power(1.0), DistortionFunction::power(2.0)));
    CHECK(pointwise_dominates(DistortionFunction::identity(), DistortionFunction::cte(0.5)));
    CHECK(pointwise_dominates(DistortionFunction::power(2.0), DistortionFunction::power(2.0)));
}

TEST_CASE("from_functions validation") {
    CHECK_THROWS_AS(DistortionFunction::from_functions([](double t) { return 1.0 - t; },
                                                       [](double v) { return 1.0 - v; },
                                                       [](double) { return -1.0; }, "dec"),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::from_functions([](double t) { return 0.5 * t + 0.2; },
                                                       [](double v) { return (v - 0.2) * 2.0; },
                                                       [](double) { return 0.5; }, "offset"),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::from_functions([](double t) { return t; },
                                                       [](double v) { return v * 0.5; },
                                                       [](double) { return 1.0; }, "badinv"),
                    std::invalid_argument);
    DistortionFunction ok = DistortionFunction::from_functions(
        [](double t) { return t * t; }, [](double v) { return std::sqrt(v); },
        [](double t) { return 2.0 * t; }, "square");
    CHECK(ok.apply(0.5) == doctest::Approx(0.25));
}

TEST_CASE("distorted distribution via power over uniform") {
    QuantileDistribution x = make_uniform01();
    DistortedDistribution y = distort(x, DistortionFunction::power(2.0));
    // Survival (1-x)^2, so Q(u) = 1 - sqrt(1-u).
    for (double u : {0.1, 0.5, 0.9}) {
        CHECK(y.quantile(u) == doctest::Approx(1.0 - std::sqrt(1.0 - u)).epsilon(1e-12));
        CHECK(y.quantile_density(u) ==
              doctest::Approx(0.5 / std::sqrt(1.0 - u)).epsilon(1e-12));
    }
    CHECK(y.survival(0.4) == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(y.cdf(0.4) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(y.mean() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(y.support_lower() == 0.0);
    CHECK(y.in_family_d());
    CHECK(y.base().label() == x.label());
}

TEST_CASE("distorted distribution via conditional tail map shifts the support") {
    QuantileDistribution x = make_uniform01();
    DistortedDistribution y = distort(x, DistortionFunction::cte(0.25));
    for (double u : {0.1, 0.5, 0.9})
        CHECK(y.quantile(u) == doctest::Approx(0.25 + 0.75 * u).epsilon(1e-12));
    CHECK(y.support_lower() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(y.in_family_d());
    CHECK(y.mean() == doctest::Approx(0.625).epsilon(1e-9));
}

TEST_CASE("distorted exponential maxima") {
    QuantileDistribution x = make_exponential(1.0);
    DistortedDistribution y = distort(x, DistortionFunction::dual_power(2));
    // Maximum of two exponentials: F(x) = (1-e^-x)^2, Q(u) = -log(1-sqrt(u)).
    CHECK(y.quantile(0.25) == doctest::Approx(-std::log(0.5)).epsilon(1e-12));
    CHECK(y.cdf(1.0) == doctest::Approx(std::pow(1.0 - std::exp(-1.0), 2.0)).epsilon(1e-12));
    CHECK(y.mean() == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("distorted mean on the survival scale agrees with the quantile route") {
    QuantileDistribution bases[] = {make_uniform01(), make_exponential(1.0),
                                    make_exponential(0.5)};
    DistortionFunction hs[] = {DistortionFunction::power(2.0), DistortionFunction::dual_power(3),
                               DistortionFunction::cte(0.5), DistortionFunction::identity()};
    for (const auto& b : bases) {
        for (const auto& h : hs) {
            double survival_route = distorted_mean(b, h);
            double quantile_route = distort(b, h).mean();
            CHECK(survival_route == doctest::Approx(quantile_route).epsilon(1e-7));
        }
    }
    // Closed forms: uniform with power(a) has distorted mean 1/(a+1);
    // exponential(1) with dual_power(m) has the harmonic sum.
    CHECK(distorted_mean(make_uniform01(), DistortionFunction::power(3.0)) ==
          doctest::Approx(0.25).epsilon(1e-8));
    CHECK(distorted_mean(make_exponential(1.0), DistortionFunction::dual_power(4)) ==
          doctest::Approx(1.0 + 0.5 + 1.0 / 3.0 + 0.25).epsilon(1e-8));
}
