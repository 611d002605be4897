#pragma once

#include <functional>
#include <vector>

#include "modflow/grid.hpp"
#include "modflow/report.hpp"

namespace modflow {

// ---- Yngvason's wedge group on (p0, p1) at fixed transverse magnitude |p^|

// F(p) = (|p^|^2 + m^2)^{1/2} + i p1
cplx yngvason_F(double p0, double p1, double phat, double m);
// F(p) F(-p) = |p^|^2 + m^2 + p1^2
double yngvason_M(double p0, double p1, double phat, double m);

// smooth momentum-space test function with its gradient
struct MomentumTestFunction {
    std::function<cplx(double, double)> value;
    std::function<cplx(double, double)> d0;
    std::function<cplx(double, double)> d1;

    static MomentumTestFunction gaussian(double c0, double c1, double width, double k0 = 0.0);
};

// (V(lambda) phi)(p) = F(-lambda p+, -p-/lambda, -p^) / F(-p+, -p-, -p^) phi(lambda p+, p-/lambda, p^)
cplx yngvason_V_point(double lambda, const MomentumTestFunction& phi, double p0, double p1, double phat, double m);

// grid version on a plane GridFunction over (p0, p1); cubic interpolation.
// Throws GridEscape when more than edge_tol of the L2 mass is pushed off the grid.
GridFunction yngvason_V(double lambda, const GridFunction& phi, double m, double phat = 0.0, double edge_tol = 1e-8);

// sum M(p) |phi(p)|^2 dp0 dp1: the one-particle norm on the plane, preserved by V
double yngvason_weighted_norm(const GridFunction& phi, double m, double phat = 0.0);

// order-zero part of d/dt V(e^{-2 pi t}) phi at t = 0 with F as above: 2 pi i p0 / (A - i p1)
cplx yngvason_mass_term(double p0, double p1, double phat, double m);
// the form -2 pi i p1 / (A - i p0), which belongs to F = A + i p0
cplx yngvason_mass_term_alt(double p0, double p1, double phat, double m);

// boost constant c in c (p1 d0 + p0 d1); fixed by resolve_yngvason_constant
inline constexpr double kYngvasonBoostConstant = -2.0 * 3.14159265358979323846;

cplx yngvason_generator(const MomentumTestFunction& phi, double p0, double p1, double phat, double m,
                        double c = kYngvasonBoostConstant);
// 4th-order central t-difference of yngvason_V_point(e^{-2 pi t}) at t = 0
cplx yngvason_generator_oracle(const MomentumTestFunction& phi, double p0, double p1, double phat, double m,
                               double h = 1e-3);

struct YngvasonResolution {
    double constant = 0;          // least-squares c from oracle minus mass term
    double rel_err = 0;           // formula with that c against the oracle
    double rel_err_alt_mass = 0;  // same with the alternative mass term
    double rel_err_4pi = 0;       // formula with c = -4 pi
};

YngvasonResolution resolve_yngvason_constant(const MomentumTestFunction& phi, const std::vector<std::array<double, 2>>& points,
                                             double phat, double m, double h = 1e-3);

// ---- Borchers-Yngvason KMS flows on the half line

enum class FlowSign { Plus, Minus };

struct KmsFlowParams {
    double beta = 1;
    double t = 0;
};

// nu_+^t(x) = beta/(2 pi) log(1 + e^{-2 pi t}(e^{2 pi x/beta} - 1)), nu_-^t(x) = -nu_+^{-t}(-x)
double by_flow(FlowSign sign, const KmsFlowParams& p, double x);
// d/dt nu^t(x) at t = 0: -beta(1 - e^{-+2 pi x/beta})
double by_flow_velocity(FlowSign sign, double beta, double x);

// Anchor of the iterated integrals in the n >= 1 pullback. Both give the same Weyl
// operator (they differ by polynomials of degree < n, killed by d^n); the Infinity
// anchor keeps the result decaying and is the one the Fourier-integral form reproduces.
enum class Anchor { Infinity, Origin };

// eta^{t,(n)} f on the half line x >= 0 (grid values at x < 0 are returned as 0).
// f^{(n)} is evaluated spectrally at nu(x); iterated integrals use the end-corrected trapezoid.
GridFunction by_pullback(int n, const KmsFlowParams& p, const GridFunction& f, Anchor anchor = Anchor::Infinity);

// -beta(1 - e^{-2 pi x/beta}) f'(x)
GridFunction by_generator_principal(double beta, const GridFunction& f);
// 2 pi e^{-2 pi x/beta} int (i xi)^k / (i xi - 2 pi/beta)^k f~(xi) e^{i x xi} d xi
GridFunction by_generator_correction_term(int k, double beta, const GridFunction& f);
// sum_{k=1..n} of the above
GridFunction by_generator_correction(int n, double beta, const GridFunction& f);
// principal + sign * correction, restricted to x >= 0
GridFunction by_generator_formula(int n, double beta, const GridFunction& f, int correction_sign = +1);
GridFunction by_generator_oracle(int n, double beta, const GridFunction& f, double h = 1e-3,
                                 Anchor anchor = Anchor::Infinity);

// rel. L2 over x >= 0
double half_line_rel_err(const GridFunction& a, const GridFunction& b);

enum class SpacetimeRegion { ForwardCone, RightWedge };

// beta/2 [(e^{-a x+} + e^{-+a x-} - 2) d0 + (e^{-a x+} - e^{-+a x-}) d1] f, a = 2 pi/beta
// (upper sign forward cone, lower sign wedge); f is a plane grid over (x0, x1)
GridFunction by_spacetime_generator(SpacetimeRegion region, double beta, const GridFunction& f);
// coefficient pair of d0, d1 at a point
std::array<double, 2> by_spacetime_field(SpacetimeRegion region, double beta, double x0, double x1);
// the flowed point (x0bar, x1bar)
std::array<double, 2> by_spacetime_flow(SpacetimeRegion region, double beta, double t, double x0, double x1);

struct FioRow {
    double xi = 0;
    double abs_symbol = 0;
};

struct FioSymbolReport {
    std::vector<FioRow> rows;
    VerificationReport report;
};

// a^{(n)}(xi) = sum_k (i xi)^k / (i xi - 2 pi/beta)^k
cplx fio_symbol(int n, double beta, double xi);
FioSymbolReport fio_symbol_report(int n, double beta);

// half-line probe grid shared by the checks: N = 8192 on [-64, 64). The left half is padding for
// the e^{2 pi x/beta} tail of (d - 2 pi/beta)^{-1}.
GridFunction half_line_grid(int n = 8192, double extent = 128.0);
GridFunction half_line_gaussian(double center, double width, int n = 8192, double extent = 128.0);
// Gaussian at c = 0.6 sqrt(beta), width c/6: negligible at the origin while e^{-2 pi c/beta}
// keeps the correction terms visible
GridFunction by_probe(double beta, int n = 8192, double extent = 128.0);
double by_probe_center(double beta);

} // namespace modflow
