#pragma once

#include <functional>
#include <vector>

#include "modflow/geometry.hpp"
#include "modflow/grid.hpp"
#include "modflow/quadrature.hpp"
#include "modflow/report.hpp"

namespace modflow {

// W_0(x, y) = kMasslessTwoPoint / ((dt - i eps)^2 - r^2); value fixed by the momentum integral
// int d^3p e^{-i|p|tau + ip.x} / (2|p| (2 pi)^3) = -1/(4 pi^2 (tau^2 - r^2))
inline constexpr double kMasslessTwoPoint = -1.0 / (4.0 * 3.14159265358979323846 * 3.14159265358979323846);

struct TwoPointOptions {
    double tail_tol = 1e-8;  // relative bound on the discarded momentum tail
    QuadOptions quad{1e-14, 1e-11, 400000};
};

// vacuum two-point function <phi(x) phi(y)> with dt -> dt - i eps
cplx two_point(double m, const FourVector& x, const FourVector& y, double eps = 1e-3, const TwoPointOptions& opt = {});
cplx two_point_massless(const FourVector& x, const FourVector& y, double eps = 1e-3);
// radial momentum quadrature (1/(4 pi^2 r)) int_0^inf (p/w) sin(pr) e^{-i w tau} dp, any m >= 0
cplx two_point_quadrature(double m, const FourVector& x, const FourVector& y, double eps = 1e-3,
                          const TwoPointOptions& opt = {});
// quadrature / (1/(tau^2 - r^2)) for m = 0: the oracle for kMasslessTwoPoint
cplx massless_constant_oracle(double t, double r, double eps);

// Pauli-Jordan function Delta_m = -(2 pi)^{-3} int d^3p sin(w t)/w e^{ip.x}, smeared in t against a
// normalized Gaussian of width sigma (momentum weight e^{-w^2 sigma^2/2}). The smearing keeps
// Delta(0, r) = 0 and the Klein-Gordon equation exact and confines the support to the light cone up
// to a Gaussian margin of a few sigma.
double pauli_jordan(double m, double t, double r, double sigma = 0.05, const QuadOptions& quad = {1e-15, 1e-12, 400000});
// m = 0 closed form: -(g(t - r) - g(t + r)) / (4 pi r)
double pauli_jordan_massless(double t, double r, double sigma = 0.05);

// sup |Delta_m| over (t, r) with r >= |t| + margin, t in [-t_max, t_max], r up to r_max
double pauli_jordan_causal_leak(double m, double sigma = 0.05, double margin = 0.5, double t_max = 2.0,
                                double r_max = 5.0, int n = 16);

// |(d_t^2 - d_r^2 - (2/r) d_r + m^2) Delta| / max(1, |d_t^2 Delta| + |lap Delta|),
// 4th-order stencils of step h; the floor makes it absolute where Delta is negligible
double pauli_jordan_kg_residual(double m, double t, double r, double h = 2e-3, double sigma = 0.05);
// the same for W(x, y) in the x argument, Cartesian 4th-order stencils
double two_point_kg_residual(double m, const FourVector& x, const FourVector& y, double eps = 0.05, double h = 2e-3);

// boost in the (x0, x1) plane with rapidity s
FourVector boost01(double s, const FourVector& x);

struct KmsOptions {
    double window = 60.0;       // s in [-window/2, window/2)
    int samples = 1 << 20;
    double eps = 1e-3;
    double e_lo = 0.1;
    double e_hi = 1.5;
    double leak_tol = 1e-2;
};

struct KmsResult {
    double beta = 0;           // fitted slope of log(|G^(-E)| / |G^(E)|) against E
    double leakage = 0;        // |G| at the window edge / max |G|
    double decay_ratio = 0;    // |G(window/4)| / |G(0)| (clustering)
    std::vector<double> E;
    std::vector<double> log_ratio;
};

// G(s) = W_0(boost01(s, x), y), G^(E) = int G(s) e^{-iEs} ds
KmsResult kms_boost_fit(const FourVector& x, const FourVector& y, const KmsOptions& opt = {});
VerificationReport kms_boost_check(const FourVector& x, const FourVector& y, const KmsOptions& opt = {});

// radial samples f(r_j), r_j = (j+1) dr, j = 0..n-1; the sine transform box ends at (n+1) dr
struct RadialFunction {
    double dr = 0.05;
    std::vector<double> f;

    double r(std::size_t j) const { return static_cast<double>(j + 1) * dr; }
    std::size_t size() const { return f.size(); }
    double box() const { return static_cast<double>(f.size() + 1) * dr; }
    static RadialFunction sample(const std::function<double(double)>& fn, std::size_t n = 2048, double dr = 0.05);
    // (int |f|^2 4 pi r^2 dr)^{1/2}
    double l2() const;
};

RadialFunction operator-(const RadialFunction& a, const RadialFunction& b);
RadialFunction operator+(const RadialFunction& a, const RadialFunction& b);
double radial_rel_err(const RadialFunction& a, const RadialFunction& b);

// 3D Fourier multiplier M(|k|) on a radial function via the sine transform (DST-I)
// check_edge = false skips the decay guard, for outputs of earlier multipliers that carry algebraic tails
RadialFunction apply_radial_multiplier(const RadialFunction& f, const std::function<double(double)>& M,
                                       bool check_edge = true);

// |k|^{1/2} / (k^2 + m^2)^{1/4} applied exactly
RadialFunction mass_shift_exact(const RadialFunction& f, double m);
double mass_shift_multiplier(double k, double m);

// R(k) = k^{3/2}/(k^2+m^2)^{1/4} - k
double f_rest_R(double k, double m);

// (4 pi / r) int_0^inf (R(k)/k) sin(kr) [int_0^inf s f(s) sin(ks) ds] dk: the kernel integral
// int int R(k) sin(k|x-y|)/|x-y| f(y) dk d^3y for radial f with unit constant. The inner
// integral is a Filon rule on the samples; the outer one composite Gauss-Legendre.
RadialFunction f_rest_integral(const RadialFunction& f, double m);

// constant in front of the kernel integral in this transform convention: 1/(2 pi^2)
inline constexpr double kFRestConstant = 1.0 / (2.0 * 3.14159265358979323846 * 3.14159265358979323846);

RadialFunction f_rest_kernel(const RadialFunction& f, double m, double c = kFRestConstant);

struct FRestCalibration {
    double constant = 0;     // least-squares c
    double rel_err = 0;      // f + c J against the exact multiplier
    double ratio_to_minus_4pi = 0;
};

FRestCalibration calibrate_f_rest(const RadialFunction& f, double m);

// beta_+- = (mu_2^{-1/2} mu_1^{1/2} +- mu_2^{1/2} mu_1^{-1/2}) / 2 with mu_i = (k^2 + m_i^2)^{1/2}
double bogoliubov_beta(int sign, double k, double m1, double m2);
RadialFunction bogoliubov_beta_apply(int sign, const RadialFunction& f, double m1, double m2);

struct HsProbe {
    double value = 0;                                  // at the largest cutoff
    std::vector<std::pair<double, double>> trend;      // (k cutoff, value)
};

// Hilbert-Schmidt norm of beta_-(D) chi_R with chi_R = exp(-|x|^2/(2R^2)):
// ((2 pi)^{-3} int |beta_-|^2 d^3k)^{1/2} ||chi_R||_2, momentum integral cut at increasing k
HsProbe hs_probe(double m1, double m2, double window);

} // namespace modflow
