#include <doctest.h>

#include <cmath>
#include <limits>

#include "modflow/errors.hpp"
#include "modflow/geometry.hpp"
#include "modflow/util.hpp"

using namespace modflow;

TEST_SUITE("geometry") {

TEST_CASE("minkowski inner product examples")
{
    CHECK(minkowski_inner({1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
    CHECK(minkowski_inner({0, 1, 0, 0}, {0, 1, 0, 0}) == -1.0);
    CHECK(minkowski_inner({1, 1, 0, 0}, {1, 1, 0, 0}) == 0.0);
}

TEST_CASE("inner product is symmetric and bilinear")
{
    Rng rng(11);
    double err = 0;
    for (int i = 0; i < 1000; ++i) {
        FourVector x = rng.four_vector(-3, 3), y = rng.four_vector(-3, 3), z = rng.four_vector(-3, 3);
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        err = std::max(err, std::abs(minkowski_inner(x, y) - minkowski_inner(y, x)));
        double lhs = minkowski_inner(a * x + b * y, z);
        double rhs = a * minkowski_inner(x, z) + b * minkowski_inner(y, z);
        err = std::max(err, std::abs(lhs - rhs));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("region membership")
{
    CHECK(contains(Region::right_wedge(), {0, 1, 0, 0}));
    CHECK(contains(Region::forward_cone(), {1, 0, 0, 0}));
    CHECK_FALSE(contains(Region::double_cone(), {1, 0, 0, 0}));
    CHECK_FALSE(contains(Region::right_wedge(), {1, 1, 0, 0}));
    CHECK(contains(Region::backward_cone(), {-1, 0.5, 0, 0}));
    CHECK(contains(Region::double_cone(2.0, {0, 5, 0, 0}), {1, 5.5, 0, 0}));
    CHECK_FALSE(contains(Region::right_wedge(), {std::nan(""), 1, 0, 0}));
    CHECK_THROWS_AS(Region::double_cone(0.0), InvalidArgument);
}

TEST_CASE("wedge reflection symmetry")
{
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        FourVector x = rng.four_vector(-2, 2);
        CHECK(contains(Region::right_wedge(), x) == contains(Region::left_wedge(), reflect_x1(x)));
    }
}

TEST_CASE("lightcone coordinates")
{
    auto a = to_lightcone({1, 0, 0, 0});
    CHECK(a.x_plus == 1.0);
    CHECK(a.x_minus == 1.0);
    CHECK_FALSE(a.has_direction);

    auto b = to_lightcone({0, 0, 0, 1});
    CHECK(b.x_plus == 1.0);
    CHECK(b.x_minus == -1.0);
    CHECK(b.has_direction);
    CHECK(b.direction[2] == 1.0);

    CHECK_THROWS_AS(from_lightcone({-1, 1, {1, 0, 0}, true}), DomainError);
    CHECK_THROWS_AS(from_lightcone({1, -1, {0, 0, 0}, false}), DomainError);
    CHECK(from_lightcone(a).x0 == 1.0);
}

TEST_CASE("lightcone roundtrip on random points")
{
    Rng rng(5);
    double err = 0;
    for (int i = 0; i < 10000; ++i) {
        FourVector x = rng.four_vector(-4, 4);
        auto lc = to_lightcone(x);
        CHECK(lc.x_plus >= lc.x_minus);
        err = std::max(err, (from_lightcone(lc) - x).euclidean_norm());
    }
    CHECK(err < 1e-12);
}

TEST_CASE("double cone in lightcone coordinates")
{
    Rng rng(8);
    for (int i = 0; i < 5000; ++i) {
        FourVector x = rng.in_region(Region::double_cone(), 1.0);
        auto lc = to_lightcone(x);
        CHECK(lc.x_minus > -1.0);
        CHECK(lc.x_minus <= lc.x_plus);
        CHECK(lc.x_plus < 1.0);
    }
}

TEST_CASE("causal relation")
{
    FourVector o{};
    CHECK(causal_relation({1, 0, 0, 0}, o) == Causal::Timelike);
    CHECK(causal_relation({1, 1, 0, 0}, o) == Causal::Lightlike);
    CHECK(causal_relation({0, 1, 0, 0}, o) == Causal::Spacelike);
    CHECK(causal_relation({1, 1 + 1e-3, 0, 0}, o, 1e-2) == Causal::Lightlike);
}

TEST_CASE("non-finite input rejected")
{
    FourVector bad{std::numeric_limits<double>::infinity(), 0, 0, 0};
    CHECK_THROWS_AS(to_lightcone(bad), InvalidArgument);
}

}
