#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modflow/geometry.hpp"
#include "modflow/report.hpp"

namespace modflow {

enum class FlowKind { Wedge, ForwardCone, DoubleConeUnit };

const char* to_string(FlowKind k);
FlowKind flow_kind_from_string(const std::string& s);  // wedge|cone|doublecone

// modular parameter t and geometric parameter s
inline double s_from_t(double t) { return 2.0 * M_PI * t; }
inline double t_from_s(double s) { return s / (2.0 * M_PI); }

Region flow_region(FlowKind k);

// N(s,x) = x^0 sinh s + (1+(x,x))/2 cosh s + (1-(x,x))/2
double hislop_longo_N(double s, const FourVector& x);

FourVector flow_point(FlowKind kind, double s, const FourVector& x);

struct ScalarTestFunction {
    std::function<double(const FourVector&)> eval;
    Region support = Region::right_wedge();

    double operator()(const FourVector& x) const { return eval(x); }
};

ScalarTestFunction gaussian_bump(const FourVector& center, double width, Region support);

// cocycle used for the double-cone pullback
enum class Cocycle {
    Conformal,  // N(-s,x)^{-3}: the conformal weight of the flow x(-s)
    Displayed   // 2^6 (1+z_+ + e^{-s}(1-z_+))^{-3} (1-z_- + e^{s}(1+z_-))^{-3}, z = x^0 +- x^3
};

double hislop_longo_gamma(double x0, double x3, double s);

// Wedge: f(L_s x); ForwardCone: e^{-3s} f(e^{-s} x) (the f_{-s} of the dilation
// theorem); DoubleConeUnit: cocycle(s,x) f(x(-s))
ScalarTestFunction flow_testfunction(FlowKind kind, double s, const ScalarTestFunction& f,
                                     Cocycle cocycle = Cocycle::Conformal);

// Wedge: x^1 d_0 f + x^0 d_1 f
// ForwardCone: -3f - x^mu d_mu f
// DoubleConeUnit: 3x^0 f + (-1 + x0^2 + |x|^2)/2 d_0 f + x^0 x^i d_i f
double generator_apply(FlowKind kind, const ScalarTestFunction& f, const FourVector& x, double h = 1e-4);

// 4th-order central derivative of f along axis mu
double partial(const ScalarTestFunction& f, const FourVector& x, int mu, double h);

struct GeneratorDecay {
    std::vector<double> steps;
    std::vector<double> discrepancy;
    double slope = 0;
};

GeneratorDecay generator_decay(FlowKind kind, const ScalarTestFunction& f, const FourVector& x, double h,
                               Cocycle cocycle = Cocycle::Conformal, double hgen = 1e-4);

VerificationReport generator_vs_flow(FlowKind kind, const ScalarTestFunction& f, const FourVector& x, double h);

struct FredenhagenRow {
    double lambda;
    double sup_discrepancy;
};

// double cone D_1 + e_1 (inside W_R, origin on its edge), sampled as lambda(D_1 + e_1)
std::vector<FredenhagenRow> fredenhagen_sweep(double s, const std::vector<double>& lambdas, int samples = 4000,
                                              std::uint64_t seed = 7);
VerificationReport fredenhagen_comparison(double s, const std::vector<double>& lambdas, int samples = 4000,
                                          std::uint64_t seed = 7);

// Hislop-Longo flow of the translated cone D_1 + e_1
FourVector shifted_double_cone_flow(double s, const FourVector& x);

} // namespace modflow
