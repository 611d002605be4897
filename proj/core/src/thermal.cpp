#include "modflow/thermal.hpp"
#include "modflow/errors.hpp"

#include <cmath>
#include <string>

namespace modflow {

namespace {

constexpr double kTwoPi = 2 * M_PI;

void require_positive(double v, const char* what)
{
    if (!(v > 0) || !std::isfinite(v))
        throw InvalidArgument(std::string(what) + " must be > 0");
}

} // namespace

const char* to_string(ObserverRegion r)
{
    switch (r) {
    case ObserverRegion::Wedge: return "wedge";
    case ObserverRegion::ForwardCone: return "cone";
    case ObserverRegion::DoubleCone: return "diamond";
    }
    return "?";
}

ObserverRegion observer_region_from_string(const std::string& s)
{
    if (s == "wedge")
        return ObserverRegion::Wedge;
    if (s == "cone")
        return ObserverRegion::ForwardCone;
    if (s == "diamond")
        return ObserverRegion::DoubleCone;
    throw InvalidArgument("unknown observer '" + s + "' (wedge|cone|diamond)");
}

double unruh_temperature(double a)
{
    require_positive(a, "unruh_temperature: a");
    return a / kTwoPi;
}

double cone_temperature(double a, double tau, double ell)
{
    if (!(a >= 0))
        throw InvalidArgument("cone_temperature: a must be >= 0");
    require_positive(ell, "cone_temperature: ell");
    return std::exp(-a * tau) / (kTwoPi * ell);
}

double diamond_lifetime(double a, double L)
{
    require_positive(L, "diamond: L");
    if (a < kDiamondSeriesThreshold)
        return L;
    return std::acosh(std::sqrt(1 + a * a * L * L)) / a;
}

double diamond_temperature(double a, double L, double tau, double eps)
{
    require_positive(L, "diamond_temperature: L");
    if (!(a >= 0))
        throw InvalidArgument("diamond_temperature: a must be >= 0");
    if (a < kDiamondSeriesThreshold) {
        double den = L * L - tau * tau;
        if (den <= eps * L * L)
            throw LifetimeBoundary("diamond_temperature: tau at or beyond the lifetime boundary");
        return L / (M_PI * den);
    }
    double aL = a * L;
    double sh = std::sinh(0.5 * a * tau);
    double den = aL * aL / (std::sqrt(1 + aL * aL) + 1) - 2 * sh * sh;
    if (den <= eps * 0.5 * aL * aL)
        throw LifetimeBoundary("diamond_temperature: tau at or beyond the lifetime boundary");
    return a * a * L / (kTwoPi * den);
}

double temperature(const ObserverSpec& o)
{
    switch (o.region) {
    case ObserverRegion::Wedge: return unruh_temperature(o.a);
    case ObserverRegion::ForwardCone: return cone_temperature(o.a, o.tau);
    case ObserverRegion::DoubleCone: return diamond_temperature(o.a, o.L, o.tau);
    }
    throw InvalidArgument("temperature: bad region");
}

FourVector boost_orbit(double a, double tau)
{
    require_positive(a, "boost_orbit: a");
    return {std::sinh(a * tau) / a, std::cosh(a * tau) / a, 0, 0};
}

FourVector boost_orbit_velocity(double a, double tau)
{
    require_positive(a, "boost_orbit: a");
    return {std::cosh(a * tau), std::sinh(a * tau), 0, 0};
}

} // namespace modflow
