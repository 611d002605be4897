#include <doctest.h>

#include "modflow/errors.hpp"
#include "modflow/freefield.hpp"
#include "modflow/modular_flow.hpp"
#include "modflow/thermal.hpp"

#include <cmath>

using namespace modflow;

namespace {
constexpr double kPi = M_PI;
}

TEST_SUITE("thermal")
{
    TEST_CASE("Unruh temperature")
    {
        CHECK(unruh_temperature(2 * kPi) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(unruh_temperature(1.0) == doctest::Approx(1 / (2 * kPi)).epsilon(1e-15));
        CHECK_THROWS_AS(unruh_temperature(0.0), InvalidArgument);
    }

    TEST_CASE("Unruh temperature agrees with the orbit KMS fit")
    {
        // proper time tau = s / a, so beta_tau = beta_s / a and T = a / beta_s
        auto fit = kms_boost_fit({0, 1, 0, 0}, {0, 1.5, 0.2, 0});
        for (double a : {0.5, 1.0, 3.0})
            CHECK(a / fit.beta == doctest::Approx(unruh_temperature(a)).epsilon(0.02));
    }

    TEST_CASE("forward light cone")
    {
        CHECK(cone_temperature(1.0, 0.0) == 1 / (2 * kPi));
        for (double tau : {-3.0, 0.0, 2.0, 50.0})
            CHECK(cone_temperature(0.0, tau) == 1 / (2 * kPi));
        double prev = cone_temperature(1.0, 0.0);
        for (int i = 1; i <= 200; ++i) {
            double t = cone_temperature(1.0, 0.25 * i);
            CHECK(t < prev);
            prev = t;
        }
        CHECK(prev < 1e-20);
        for (double d : {0.1, 1.0, 3.0})
            CHECK(cone_temperature(0.7, 0.4 + d) == doctest::Approx(std::exp(-0.7 * d) * cone_temperature(0.7, 0.4)).epsilon(1e-15));
    }

    TEST_CASE("diamond: a -> 0 limit across the series threshold")
    {
        CHECK(diamond_temperature(0.0, 1.0, 0.0) == doctest::Approx(1 / kPi).epsilon(1e-15));
        double below = diamond_temperature(kDiamondSeriesThreshold * (1 - 1e-9), 1.0, 0.0);
        double above = diamond_temperature(kDiamondSeriesThreshold * (1 + 1e-9), 1.0, 0.0);
        CHECK(std::abs(below - 1 / kPi) < 1e-8);
        CHECK(std::abs(above - 1 / kPi) < 1e-8);
        CHECK(std::abs(above - below) < 1e-8);
        for (double tau : {0.3, -0.6, 0.9}) {
            double lo = diamond_temperature(0.99 * kDiamondSeriesThreshold, 1.0, tau);
            double hi = diamond_temperature(1.01 * kDiamondSeriesThreshold, 1.0, tau);
            CHECK(std::abs(hi - lo) < 1e-8 * lo);
        }
        // naive evaluation loses everything at small a; the stable form tracks the series limit
        for (double a : {1e-5, 1e-4, 1e-3}) {
            double series = (1 / kPi) * (1 + a * a / 4);  // next order of the Taylor expansion at tau = 0, L = 1
            CHECK(diamond_temperature(a, 1.0, 0.0) == doctest::Approx(series).epsilon(1e-8));
        }
    }

    TEST_CASE("diamond: divergence at the lifetime boundary")
    {
        for (double a : {0.0, 0.5, 2.0}) {
            double life = diamond_lifetime(a, 1.0);
            double prev = diamond_temperature(a, 1.0, 0.0);
            for (double f : {0.9, 0.99, 0.999, 0.9999}) {
                double t = diamond_temperature(a, 1.0, f * life);
                CHECK(t > prev);
                prev = t;
            }
            CHECK(prev > 100 * diamond_temperature(a, 1.0, 0.0));
            CHECK_THROWS_AS(diamond_temperature(a, 1.0, life), LifetimeBoundary);
            CHECK_THROWS_AS(diamond_temperature(a, 1.0, 1.1 * life), LifetimeBoundary);
        }
        // the lifetime window matches |cosh a tau| < sqrt(1 + a^2 L^2)
        CHECK(std::cosh(2.0 * diamond_lifetime(2.0, 1.0)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    }

    TEST_CASE("diamond: evenness, minimum at tau = 0, Unruh floor, large aL")
    {
        for (double a : {0.0, 0.3, 2.0, 10.0}) {
            double life = diamond_lifetime(a, 1.0);
            double t0 = diamond_temperature(a, 1.0, 0.0);
            if (a > 0)
                CHECK(t0 >= unruh_temperature(a));
            for (int i = 1; i < 50; ++i) {
                double tau = life * i / 50.0;
                double p = diamond_temperature(a, 1.0, tau), m = diamond_temperature(a, 1.0, -tau);
                CHECK(p == doctest::Approx(m).epsilon(1e-13));
                CHECK(p > t0);
            }
        }
        for (double aL : {20.0, 100.0, 1000.0}) {
            double a = aL;
            double want = unruh_temperature(a) / (1 - 1 / aL);
            CHECK(diamond_temperature(a, 1.0, 0.0) == doctest::Approx(want).epsilon(1.0 / (aL * aL)));
        }
    }

    TEST_CASE("dimensional scaling")
    {
        for (double k : {0.5, 2.0, 7.0}) {
            double a = 0.8, L = 1.3, tau = 0.4;
            CHECK(unruh_temperature(k * a) == doctest::Approx(k * unruh_temperature(a)).epsilon(1e-14));
            CHECK(diamond_temperature(k * a, L / k, tau / k) ==
                  doctest::Approx(k * diamond_temperature(a, L, tau)).epsilon(1e-13));
            CHECK(cone_temperature(k * a, tau / k, 1 / k) == doctest::Approx(k * cone_temperature(a, tau)).epsilon(1e-14));
        }
    }

    TEST_CASE("boost orbit")
    {
        for (double a : {0.5, 1.0, 4.0}) {
            auto x0 = boost_orbit(a, 0.0);
            CHECK(x0.x0 == 0.0);
            CHECK(x0.x1 == doctest::Approx(1 / a).epsilon(1e-15));
            for (double tau : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
                auto x = boost_orbit(a, tau);
                CHECK(contains(Region::right_wedge(), x));
                auto u = boost_orbit_velocity(a, tau);
                // cosh^2 - sinh^2 cancels; the absolute bound holds while cosh^2 stays moderate
                CHECK(std::abs(minkowski_square(u) - 1) < 1e-10 * std::max(1.0, 1e-3 * u.x0 * u.x0));
                // central difference of the orbit agrees with the velocity
                double h = 1e-5;
                auto xp = boost_orbit(a, tau + h), xm = boost_orbit(a, tau - h);
                CHECK(std::abs((xp.x0 - xm.x0) / (2 * h) - u.x0) < 1e-6 * std::cosh(a * tau));
                auto y = flow_point(FlowKind::Wedge, a * tau, x0);
                CHECK(std::abs(y.x0 - x.x0) < 1e-12 * std::cosh(a * tau));
                CHECK(std::abs(y.x1 - x.x1) < 1e-12 * std::cosh(a * tau));
                // group property Lambda_{a tau} x(tau0) = x(tau0 + tau)
                auto z = flow_point(FlowKind::Wedge, a * tau, boost_orbit(a, 0.7));
                auto w = boost_orbit(a, 0.7 + tau);
                CHECK(std::abs(z.x1 - w.x1) < 1e-12 * std::cosh(a * (tau + 0.7)));
            }
        }
        CHECK_THROWS_AS(boost_orbit(0.0, 1.0), InvalidArgument);
    }

    TEST_CASE("observer dispatch")
    {
        CHECK(temperature({1.0, ObserverRegion::Wedge, 1.0, 3.0}) == unruh_temperature(1.0));
        CHECK(temperature({1.0, ObserverRegion::ForwardCone, 1.0, 0.0}) == 1 / (2 * kPi));
        CHECK(temperature({0.0, ObserverRegion::DoubleCone, 1.0, 0.0}) == doctest::Approx(1 / kPi));
        CHECK(observer_region_from_string("diamond") == ObserverRegion::DoubleCone);
        CHECK_THROWS_AS(observer_region_from_string("box"), InvalidArgument);
    }
}
