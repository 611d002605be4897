#pragma once

#include <string>

#include "modflow/geometry.hpp"

namespace modflow {

enum class ObserverRegion { Wedge, ForwardCone, DoubleCone };

const char* to_string(ObserverRegion r);
ObserverRegion observer_region_from_string(const std::string& s);  // wedge|cone|diamond

struct ObserverSpec {
    double a = 1.0;   // acceleration, 1/length
    ObserverRegion region = ObserverRegion::Wedge;
    double L = 1.0;   // diamond base radius
    double tau = 0.0; // proper time
};

// below this acceleration the diamond formula switches to its a -> 0 limit
inline constexpr double kDiamondSeriesThreshold = 1e-6;

double unruh_temperature(double a);

// e^{-a tau} / (2 pi ell); ell = 1 is the displayed formula, other values restore the length unit
double cone_temperature(double a, double tau, double ell = 1.0);

// a^2 L / (2 pi (sqrt(1 + a^2 L^2) - cosh a tau)), evaluated as
// a^2 L / (2 pi (a^2 L^2/(sqrt(1 + a^2 L^2) + 1) - 2 sinh^2(a tau / 2))) to avoid cancellation.
// Throws LifetimeBoundary when the bracket is <= eps relative to a^2 L^2 / 2, i.e. at or beyond the
// end of the observer's lifetime.
double diamond_temperature(double a, double L, double tau, double eps = 1e-12);

// half lifetime: |tau| < acosh(sqrt(1 + a^2 L^2)) / a, and L for a = 0
double diamond_lifetime(double a, double L);

double temperature(const ObserverSpec& o);

// (sinh(a tau)/a, cosh(a tau)/a, 0, 0)
FourVector boost_orbit(double a, double tau);
FourVector boost_orbit_velocity(double a, double tau);

} // namespace modflow
