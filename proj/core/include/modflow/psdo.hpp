#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modflow/grid.hpp"
#include "modflow/report.hpp"

namespace modflow {

// p(x, xi) of declared order m and type (rho, delta)
struct Symbol {
    double order = 0;
    double rho = 1;
    double delta = 0;
    int dim = 1;
    bool x_independent = true;
    std::function<cplx(const Coord& x, const Coord& xi)> eval;

    static Symbol multiplier(double order, int dim, std::function<cplx(const Coord& xi)> p);
    void validate() const;
};

inline double norm3(const Coord& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// (|xi|^2 + m^2)^{1/2}, or its inverse
Symbol energy_symbol(double m, int dim = 1, bool inverse = false);

struct SymbolProbe {
    double xi_max = 200;
    int n_xi = 4001;
    std::vector<double> x_points{-1.0, 0.0, 0.5, 2.0};
};

// sup |d_xi^a d_x^b p| (1+|xi|)^{-(m + delta b - rho a)} on [-X, X] and [-2X, 2X];
// passes when every supremum is finite and grows by less than 10%
VerificationReport symbol_estimate_check(const Symbol& p, int maxorder, const SymbolProbe& probe = {});

struct ApplyOptions {
    bool strict = true;         // throw AliasWarning / DomainError instead of proceeding
    double alias_tol = 1e-8;    // spectral energy above Nyquist/2
    double edge_tol = 1e-10;    // |f| on the box edge relative to max |f|
};

// f(x) = int f~(xi) e^{ix.xi} dxi: forward DFT, multiply, inverse DFT.
// x-dependent symbols are applied row by row (direct sum, 1D only).
GridFunction apply_psdo(const Symbol& p, const GridFunction& f, const ApplyOptions& opt = {});

// spectral guard used by every transform-based operation
void check_resolved(const GridFunction& f, const ApplyOptions& opt, const char* where);

enum class Regime { Ultrarelativistic, Nonrelativistic };

struct ExpansionTerm {
    int k = 0;
    double power = 0;        // exponent of |xi|
    double mass_power = 0;   // exponent of m
    double coefficient = 0;  // binomial coefficient
    double value(double xi_abs, double m) const;
};

struct AsymptoticExpansion {
    Regime regime = Regime::Ultrarelativistic;
    bool inverse = false;
    double m = 0;
    std::vector<ExpansionTerm> terms;

    // sum of the first nterms terms at |xi|
    double partial_sum(double xi_abs, std::size_t nterms) const;
};

double binomial(double a, int k);

// terms k = 0..N of (xi^2+m^2)^{+-1/2}: ur in powers of m^2/xi^2, nr in powers of xi^2/m^2
AsymptoticExpansion energy_expansion(double m, int N, Regime regime, bool inverse);

struct RemainderFit {
    double slope = 0;
    bool identically_zero = false;
    std::vector<double> xi;
    std::vector<double> remainder;
};

// |(xi^2+m^2)^{1/2} - sum_{k<N} p_k| on a log grid over [xi_lo, xi_hi] (extended precision)
RemainderFit expansion_remainder_order(double m, int N, double xi_lo, double xi_hi, bool inverse = false,
                                       int samples = 40);

// sum_{k<N} of the expansion applied as powers of the Laplacian; with regime_split
// the spectrum is cut at |xi| = m (sharp, or smoothed over 0.1 m)
GridFunction apply_energy_truncated(const GridFunction& f, double m, int N, bool regime_split, bool inverse = false,
                                    bool smooth_split = false, const ApplyOptions& opt = {});

// ||(omega_m f) 1_{O^c}|| / ||omega_m f||
double anti_locality_probe(const GridFunction& f, double m, const std::function<bool(const Coord&)>& inside);

// (int (1+|xi|^2)^s |f^(xi)|^2 dxi)^{1/2} with the unitary transform, so s = 0 is the L2 norm
double sobolev_norm(const GridFunction& f, double s);

using GridOperator = std::function<GridFunction(const GridFunction&)>;

struct OrderFit {
    std::vector<double> s;
    std::vector<double> order;
    double mean = 0;
};

// slope of log(||op g_K||_s / ||g_K||_s) against log K over modulated Gaussian probes
// g_K = exp(-|x-c|^2/(2 w^2)) cos(K (x-c)_0), c = center e_0
OrderFit mapping_order_estimate(const GridOperator& op, const std::vector<double>& s_list, const GridFunction& shape,
                                const std::vector<double>& ks = {8, 16, 32, 64}, double width = 2.0,
                                double center = 0.0);

} // namespace modflow
