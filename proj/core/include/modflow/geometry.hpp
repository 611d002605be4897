#pragma once

#include <array>
#include <cmath>

namespace modflow {

// point of R^{1,3}, signature (+,-,-,-)
struct FourVector {
    double x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    double  operator[](int i) const { return (&x0)[i]; }
    double& operator[](int i) { return (&x0)[i]; }

    bool finite() const {
        return std::isfinite(x0) && std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
    }
    double spatial_norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
    double euclidean_norm() const { return std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3); }
};

inline FourVector operator+(FourVector a, const FourVector& b) {
    a.x0 += b.x0; a.x1 += b.x1; a.x2 += b.x2; a.x3 += b.x3;
    return a;
}
inline FourVector operator-(FourVector a, const FourVector& b) {
    a.x0 -= b.x0; a.x1 -= b.x1; a.x2 -= b.x2; a.x3 -= b.x3;
    return a;
}
inline FourVector operator-(FourVector a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
inline FourVector operator*(double s, FourVector a) { return {s * a.x0, s * a.x1, s * a.x2, s * a.x3}; }
inline FourVector operator*(FourVector a, double s) { return s * a; }
inline FourVector operator/(FourVector a, double s) { return {a.x0 / s, a.x1 / s, a.x2 / s, a.x3 / s}; }

inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

double minkowski_inner(const FourVector& x, const FourVector& y);
inline double minkowski_square(const FourVector& x) { return minkowski_inner(x, x); }

// throws InvalidArgument on NaN/Inf
void require_finite(const FourVector& x, const char* where);

struct LightconeCoords {
    double x_plus = 0;
    double x_minus = 0;
    std::array<double, 3> direction{0, 0, 0};
    bool has_direction = false;
};

LightconeCoords to_lightcone(const FourVector& x);
FourVector from_lightcone(const LightconeCoords& lc);

enum class RegionKind { RightWedge, LeftWedge, ForwardCone, BackwardCone, DoubleCone };

struct Region {
    RegionKind kind = RegionKind::RightWedge;
    double radius = 1.0;
    FourVector center{};

    static Region right_wedge() { return {RegionKind::RightWedge}; }
    static Region left_wedge() { return {RegionKind::LeftWedge}; }
    static Region forward_cone() { return {RegionKind::ForwardCone}; }
    static Region backward_cone() { return {RegionKind::BackwardCone}; }
    static Region double_cone(double radius = 1.0, FourVector center = {});
};

// open regions: boundary points are outside
bool contains(const Region& r, const FourVector& x);

enum class Causal { Timelike, Lightlike, Spacelike };

inline constexpr double kLightlikeEps = 1e-12;

Causal causal_relation(const FourVector& x, const FourVector& y, double eps = kLightlikeEps);

const char* to_string(Causal c);
const char* to_string(RegionKind k);

// x^1 -> -x^1
inline FourVector reflect_x1(FourVector x) { x.x1 = -x.x1; return x; }

} // namespace modflow
