#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "modflow/geometry.hpp"
#include "modflow/report.hpp"

namespace modflow {

using Mat4 = Eigen::Matrix4d;

inline constexpr double kSingularEps = 1e-12;

Mat4 metric4();
// boost in the (x^0, x^axis) plane with rapidity s
Mat4 boost_matrix(double s, int axis = 1);
// rotation in the (x^i, x^j) spatial plane
Mat4 rotation_matrix(double angle, int i, int j);

struct Translation { FourVector a; };
struct LorentzMap { Mat4 L; };
struct Dilation { double lambda; };
struct SpecialConformal { FourVector c; };
struct Inversion {};

class ConformalMap {
public:
    using Variant = std::variant<Translation, LorentzMap, Dilation, SpecialConformal, Inversion>;

    static ConformalMap translation(const FourVector& a);
    static ConformalMap lorentz(const Mat4& L);   // throws unless L^T g L = g to 1e-10
    static ConformalMap dilation(double lambda);  // throws unless lambda > 0
    static ConformalMap special_conformal(const FourVector& c);
    static ConformalMap inversion();

    const Variant& data() const { return v_; }
    std::string name() const;

private:
    explicit ConformalMap(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

FourVector apply(const ConformalMap& m, const FourVector& x, double eps = kSingularEps);

// N(x) in (x'-y')^2 = (x-y)^2 / (N(x) N(y))
double conformal_factor(const ConformalMap& m, const FourVector& x);

// maps applied right to left: chain = {g, h} means g(h(x))
FourVector apply_chain(const std::vector<ConformalMap>& chain, const FourVector& x, double eps = kSingularEps);
double chain_factor(const std::vector<ConformalMap>& chain, const FourVector& x);

// u^mu = a^mu + g^{mu l} w_{l n} x^n + b x^mu + 2 x^mu (c.x) - (x.x) c^mu
struct GeneratorField {
    FourVector a{};
    Mat4 omega = Mat4::Zero();  // lower indices, antisymmetric
    double b = 0;
    FourVector c{};

    static GeneratorField P(const FourVector& a);
    static GeneratorField M(const Mat4& omega);  // throws unless antisymmetric to 1e-12
    static GeneratorField D(double b);
    static GeneratorField K(const FourVector& c);

    GeneratorField operator+(const GeneratorField& o) const;
    GeneratorField operator-(const GeneratorField& o) const;
    GeneratorField operator*(double s) const;

    // 15 real coordinates: a(4), omega_{mn} for m<n (6), b, c(4)
    Eigen::Matrix<double, 15, 1> params() const;
    static GeneratorField from_params(const Eigen::Matrix<double, 15, 1>& p);
    double max_abs() const { return params().cwiseAbs().maxCoeff(); }
};

FourVector killing_field(const GeneratorField& g, const FourVector& x);
// J(mu, nu) = d_nu u^mu, exact
Mat4 killing_jacobian(const GeneratorField& g, const FourVector& x);

// The real vector-field images of the quantum generators. With these the
// brackets read [X_A, X_B] = f_AB^C X_C, the quantum table without its i.
namespace algebra {
GeneratorField P(int mu);           // d_mu
GeneratorField M(int mu, int nu);   // x_mu d_nu - x_nu d_mu
GeneratorField D();                 // x.d
GeneratorField K(int mu);           // c = -e_mu
}

struct BracketFit {
    GeneratorField field;
    double residual = 0;  // max over probes and components
};

using VectorFieldFn = std::function<FourVector(const FourVector&)>;

// least-squares fit of sampled vector-field values into the 15-dim algebra
BracketFit fit_generator(const std::vector<FourVector>& probes, const std::vector<FourVector>& values);

// [X1,X2]^mu = X1^n d_n X2^mu - X2^n d_n X1^mu, fitted back into the algebra;
// throws FitFailure when the residual exceeds 1e-8
BracketFit lie_bracket(const GeneratorField& g1, const GeneratorField& g2, const std::vector<FourVector>& probes);

struct BracketRelation {
    std::string name;
    double max_error = 0;      // worst coefficient mismatch over all index choices
    double max_residual = 0;   // worst fit residual
};

// the ten relations with the consistent sign set; kp_literal selects the
// printed [K,P] = 2(gD + M) form instead of 2(gD - M)
std::vector<BracketRelation> bracket_table(const std::vector<FourVector>& probes, bool kp_literal = false);

// six homogeneous coordinates, metric diag(+,-,-,-,-,+)
struct PseudoOrthoPoint {
    std::array<double, 6> xi{};
    double xi_plus() const { return xi[4] + xi[5]; }
    double xi_minus() const { return xi[4] - xi[5]; }
    double quadric() const;
};

PseudoOrthoPoint pseudo_ortho_embed(const FourVector& x);
FourVector pseudo_ortho_project(const PseudoOrthoPoint& p, double eps = kSingularEps);

enum class Plane { T41, T04, T05, T54, T10 };

PseudoOrthoPoint pseudo_rotation(Plane plane, double angle, const PseudoOrthoPoint& p);
PseudoOrthoPoint pseudo_rotation_inverse(Plane plane, double angle, const PseudoOrthoPoint& p);

// T_41(pi/2) T_10(s) T_41(pi/2)^{-1}
PseudoOrthoPoint conjugated_boost(double s, const PseudoOrthoPoint& p);

// infinitesimal generator J_{ab} = xi_a d_b - xi_b d_a pushed down to R^{1,3}
FourVector induced_field(int a, int b, const FourVector& x);

VerificationReport inversion_identities_check(int samples, std::uint64_t seed = 1);
VerificationReport pseudo_ortho_correspondence_check(const std::vector<FourVector>& probes);

} // namespace modflow
