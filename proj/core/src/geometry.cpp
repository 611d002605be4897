#include "modflow/geometry.hpp"
#include "modflow/errors.hpp"

#include <string>

namespace modflow {

double minkowski_inner(const FourVector& x, const FourVector& y)
{
    return x.x0 * y.x0 - x.x1 * y.x1 - x.x2 * y.x2 - x.x3 * y.x3;
}

void require_finite(const FourVector& x, const char* where)
{
    if (!x.finite())
        throw InvalidArgument(std::string(where) + ": non-finite four-vector component");
}

LightconeCoords to_lightcone(const FourVector& x)
{
    require_finite(x, "to_lightcone");
    LightconeCoords lc;
    double r = x.spatial_norm();
    lc.x_plus = x.x0 + r;
    lc.x_minus = x.x0 - r;
    if (r > 0) {
        lc.direction = {x.x1 / r, x.x2 / r, x.x3 / r};
        lc.has_direction = true;
    }
    return lc;
}

FourVector from_lightcone(const LightconeCoords& lc)
{
    if (!(lc.x_plus >= lc.x_minus))
        throw DomainError("from_lightcone: x_plus < x_minus");
    double r = 0.5 * (lc.x_plus - lc.x_minus);
    FourVector x{0.5 * (lc.x_plus + lc.x_minus), 0, 0, 0};
    if (r > 0) {
        if (!lc.has_direction)
            throw DomainError("from_lightcone: spatial radius > 0 but direction undefined");
        x.x1 = r * lc.direction[0];
        x.x2 = r * lc.direction[1];
        x.x3 = r * lc.direction[2];
    }
    return x;
}

Region Region::double_cone(double radius, FourVector center)
{
    if (!(radius > 0) || !std::isfinite(radius))
        throw InvalidArgument("double cone radius must be > 0");
    require_finite(center, "Region::double_cone");
    return {RegionKind::DoubleCone, radius, center};
}

bool contains(const Region& r, const FourVector& x)
{
    if (!x.finite())
        return false;
    switch (r.kind) {
    case RegionKind::RightWedge:
        return std::abs(x.x0) < x.x1;
    case RegionKind::LeftWedge:
        return std::abs(x.x0) < -x.x1;
    case RegionKind::ForwardCone:
        return x.x0 > 0 && minkowski_square(x) > 0;
    case RegionKind::BackwardCone:
        return x.x0 < 0 && minkowski_square(x) > 0;
    case RegionKind::DoubleCone: {
        if (!(r.radius > 0))
            return false;
        FourVector y = (x - r.center) / r.radius;
        return std::abs(y.x0) + y.spatial_norm() < 1.0;
    }
    }
    return false;
}

Causal causal_relation(const FourVector& x, const FourVector& y, double eps)
{
    double q = minkowski_square(x - y);
    if (std::abs(q) <= eps)
        return Causal::Lightlike;
    return q > 0 ? Causal::Timelike : Causal::Spacelike;
}

const char* to_string(Causal c)
{
    switch (c) {
    case Causal::Timelike: return "timelike";
    case Causal::Lightlike: return "lightlike";
    case Causal::Spacelike: return "spacelike";
    }
    return "?";
}

const char* to_string(RegionKind k)
{
    switch (k) {
    case RegionKind::RightWedge: return "W_R";
    case RegionKind::LeftWedge: return "W_L";
    case RegionKind::ForwardCone: return "V+";
    case RegionKind::BackwardCone: return "V-";
    case RegionKind::DoubleCone: return "D";
    }
    return "?";
}

} // namespace modflow
