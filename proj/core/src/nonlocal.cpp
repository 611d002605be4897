#include "modflow/nonlocal.hpp"
#include "modflow/errors.hpp"
#include "modflow/psdo.hpp"
#include "modflow/util.hpp"

#include <algorithm>
#include <cmath>

namespace modflow {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double transverse(double phat, double m) { return std::sqrt(phat * phat + m * m); }

void require_mass(double m)
{
    if (!(m > 0) || !std::isfinite(m))
        throw InvalidArgument("yngvason: m must be > 0");
}

void require_beta(double beta)
{
    if (!(beta > 0) || !std::isfinite(beta))
        throw InvalidArgument("beta must be > 0");
}

template <class G>
cplx central4(const G& g, double h)
{
    return (-g(2 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2 * h)) / (12.0 * h);
}

GridFunction central4_grid(const std::function<GridFunction(double)>& g, double h)
{
    GridFunction a = g(2 * h), b = g(h), c = g(-h), d = g(-2 * h);
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (-a[i] + 8.0 * b[i] - 8.0 * c[i] + d[i]) / (12.0 * h);
    return out;
}

std::size_t origin_index(const GridFunction& f)
{
    if (f.dim() != 1)
        throw InvalidArgument("half-line functions are one-dimensional");
    int j0 = f.n(0) / 2;
    if (std::abs(f.coord(0, j0)) > 1e-12)
        throw InvalidArgument("half-line grid must contain x = 0");
    return static_cast<std::size_t>(j0);
}

// trigonometric interpolant of f and its derivatives at arbitrary points
class SpectralEvaluator {
public:
    explicit SpectralEvaluator(const GridFunction& f) : L_(f.extent(0)), x0_(f.coord(0, 0))
    {
        GridFunction spec = f;
        dft_forward(spec);
        const int n = f.n(0);
        double peak = 0;
        for (std::size_t k = 0; k < spec.size(); ++k)
            peak = std::max(peak, std::abs(spec[k]));
        // signed mode numbers, keep the contiguous band carrying the signal
        int kmin = 0, kmax = 0;
        for (int k = 0; k < n; ++k) {
            int ks = k <= n / 2 ? k : k - n;
            if (k == n / 2)
                continue;
            if (std::abs(spec[k]) > 1e-15 * peak) {
                kmin = std::min(kmin, ks);
                kmax = std::max(kmax, ks);
            }
        }
        kmin_ = kmin;
        for (int ks = kmin; ks <= kmax; ++ks)
            coef_.push_back(spec[static_cast<std::size_t>((ks + n) % n)] / static_cast<double>(n));
    }

    // d^m/dy^m of the interpolant at y
    cplx eval(double y, int m) const
    {
        const double dk = kTwoPi / L_;
        const double th = dk * (y - x0_);
        cplx w = std::polar(1.0, th);
        cplx cur = std::polar(1.0, th * kmin_);
        cplx acc = 0;
        for (std::size_t i = 0; i < coef_.size(); ++i) {
            double xi = dk * (kmin_ + static_cast<int>(i));
            cplx c = coef_[i];
            for (int d = 0; d < m; ++d)
                c *= cplx(0, xi);
            acc += c * cur;
            cur *= w;
        }
        return acc;
    }

private:
    double L_, x0_;
    int kmin_ = 0;
    std::vector<cplx> coef_;
};

GridFunction multiply_spectrum(const GridFunction& f, const std::function<cplx(double)>& m)
{
    GridFunction spec = f;
    dft_forward(spec);
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] *= m(spec.frequency(i)[0]);
    dft_inverse(spec);
    return spec;
}

} // namespace

// ---- Yngvason

cplx yngvason_F(double p0, double p1, double phat, double m)
{
    (void)p0;
    require_mass(m);
    return {transverse(phat, m), p1};
}

double yngvason_M(double p0, double p1, double phat, double m)
{
    (void)p0;
    return phat * phat + m * m + p1 * p1;
}

MomentumTestFunction MomentumTestFunction::gaussian(double c0, double c1, double width, double k0)
{
    auto g = [=](double p0, double p1) {
        double a = p0 - c0, b = p1 - c1;
        return std::exp(cplx(-(a * a + b * b) / (2 * width * width), k0 * a));
    };
    MomentumTestFunction f;
    f.value = g;
    f.d0 = [=](double p0, double p1) { return cplx(-(p0 - c0) / (width * width), k0) * g(p0, p1); };
    f.d1 = [=](double p0, double p1) { return -(p1 - c1) / (width * width) * g(p0, p1); };
    return f;
}

cplx yngvason_V_point(double lambda, const MomentumTestFunction& phi, double p0, double p1, double phat, double m)
{
    if (!(lambda > 0))
        throw InvalidArgument("yngvason_V: lambda must be > 0");
    require_mass(m);
    double pp = p0 + p1, pm = p0 - p1;
    double qp = lambda * pp, qm = pm / lambda;
    double q0 = 0.5 * (qp + qm), q1 = 0.5 * (qp - qm);
    cplx ratio = yngvason_F(-q0, -q1, phat, m) / yngvason_F(-p0, -p1, phat, m);
    return ratio * phi.value(q0, q1);
}

GridFunction yngvason_V(double lambda, const GridFunction& phi, double m, double phat, double edge_tol)
{
    if (!(lambda > 0))
        throw InvalidArgument("yngvason_V: lambda must be > 0");
    require_mass(m);
    if (phi.dim() != 2)
        throw InvalidArgument("yngvason_V: expects a (p0, p1) plane grid");
    // mass whose preimage under the rescaling falls off the grid
    double lost = 0, total = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        Coord q = phi.point(i);
        double e = std::norm(phi[i]);
        total += e;
        double qp = q[0] + q[1], qm = q[0] - q[1];
        double pp = qp / lambda, pm = qm * lambda;
        if (!inside_box(phi, {0.5 * (pp + pm), 0.5 * (pp - pm), 0}))
            lost += e;
    }
    if (total > 0 && lost / total > edge_tol)
        throw GridEscape("yngvason_V: rescaling pushes " + fmt(lost / total) + " of the mass off the grid");

    GridFunction out = phi;
    parallel_for(phi.size(), [&](std::size_t i) {
        Coord p = phi.point(i);
        double pp = p[0] + p[1], pm = p[0] - p[1];
        double qp = lambda * pp, qm = pm / lambda;
        Coord q{0.5 * (qp + qm), 0.5 * (qp - qm), 0};
        cplx ratio = yngvason_F(-q[0], -q[1], phat, m) / yngvason_F(-p[0], -p[1], phat, m);
        out[i] = ratio * sample_cubic(phi, q);
    });
    return out;
}

double yngvason_weighted_norm(const GridFunction& phi, double m, double phat)
{
    double acc = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        Coord p = phi.point(i);
        acc += yngvason_M(p[0], p[1], phat, m) * std::norm(phi[i]);
    }
    return std::sqrt(acc * phi.cell_volume());
}

cplx yngvason_mass_term(double p0, double p1, double phat, double m)
{
    require_mass(m);
    return cplx(0, kTwoPi * p0) / cplx(transverse(phat, m), -p1);
}

cplx yngvason_mass_term_alt(double p0, double p1, double phat, double m)
{
    require_mass(m);
    return cplx(0, -kTwoPi * p1) / cplx(transverse(phat, m), -p0);
}

cplx yngvason_generator(const MomentumTestFunction& phi, double p0, double p1, double phat, double m, double c)
{
    return yngvason_mass_term(p0, p1, phat, m) * phi.value(p0, p1) +
           c * (p1 * phi.d0(p0, p1) + p0 * phi.d1(p0, p1));
}

cplx yngvason_generator_oracle(const MomentumTestFunction& phi, double p0, double p1, double phat, double m, double h)
{
    return central4([&](double t) { return yngvason_V_point(std::exp(-kTwoPi * t), phi, p0, p1, phat, m); }, h);
}

YngvasonResolution resolve_yngvason_constant(const MomentumTestFunction& phi,
                                             const std::vector<std::array<double, 2>>& points, double phat, double m,
                                             double h)
{
    if (points.empty())
        throw InvalidArgument("resolve_yngvason_constant: no probe points");
    std::vector<cplx> oracle(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        oracle[i] = yngvason_generator_oracle(phi, points[i][0], points[i][1], phat, m, h);
    });
    double num = 0, den = 0, on = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [p0, p1] = points[i];
        cplx r = oracle[i] - yngvason_mass_term(p0, p1, phat, m) * phi.value(p0, p1);
        cplx d = p1 * phi.d0(p0, p1) + p0 * phi.d1(p0, p1);
        num += std::real(std::conj(d) * r);
        den += std::norm(d);
        on += std::norm(oracle[i]);
    }
    YngvasonResolution res;
    res.constant = den > 0 ? num / den : 0.0;
    double e = 0, ea = 0, e4 = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [p0, p1] = points[i];
        cplx d = p1 * phi.d0(p0, p1) + p0 * phi.d1(p0, p1);
        cplx v = phi.value(p0, p1);
        e += std::norm(yngvason_mass_term(p0, p1, phat, m) * v + res.constant * d - oracle[i]);
        ea += std::norm(yngvason_mass_term_alt(p0, p1, phat, m) * v + res.constant * d - oracle[i]);
        e4 += std::norm(yngvason_mass_term(p0, p1, phat, m) * v - 2 * kTwoPi * d - oracle[i]);
    }
    res.rel_err = std::sqrt(e / on);
    res.rel_err_alt_mass = std::sqrt(ea / on);
    res.rel_err_4pi = std::sqrt(e4 / on);
    return res;
}

// ---- Borchers-Yngvason

double by_flow(FlowSign sign, const KmsFlowParams& p, double x)
{
    require_beta(p.beta);
    if (sign == FlowSign::Minus)
        return -by_flow(FlowSign::Plus, {p.beta, -p.t}, -x);
    const double a = kTwoPi / p.beta;
    double u = std::exp(-kTwoPi * p.t) * std::expm1(a * x);
    if (!(1 + u > 0))
        throw DomainViolation("by_flow: 1 + e^{-2 pi t}(e^{2 pi x/beta} - 1) <= 0");
    return std::log1p(u) / a;
}

double by_flow_velocity(FlowSign sign, double beta, double x)
{
    require_beta(beta);
    const double a = kTwoPi / beta;
    return sign == FlowSign::Plus ? beta * std::expm1(-a * x) : beta * std::expm1(a * x);
}

GridFunction by_pullback(int n, const KmsFlowParams& p, const GridFunction& f, Anchor anchor)
{
    if (n < 0)
        throw InvalidArgument("by_pullback: n must be >= 0");
    require_beta(p.beta);
    const std::size_t j0 = origin_index(f);
    check_resolved(f, ApplyOptions{}, "by_pullback");
    const std::size_t N = f.size();
    const double a = kTwoPi / p.beta;
    const double et = std::exp(-kTwoPi * p.t);
    SpectralEvaluator ev(f);

    // integrand g = f^{(n)}(nu(x)) and its x-derivative on x >= 0
    std::vector<cplx> g(N, 0.0), gp(N, 0.0);
    parallel_for(N - j0, [&](std::size_t i) {
        std::size_t j = j0 + i;
        double x = f.coord(0, static_cast<int>(j));
        double y = by_flow(FlowSign::Plus, p, x);
        double arg = 1 + et * std::expm1(a * x);
        double dnu = et * std::exp(a * x) / arg;
        g[j] = ev.eval(y, n);
        gp[j] = ev.eval(y, n + 1) * dnu;
    });

    const double dx = f.dx(0);
    for (int level = 0; level < n; ++level) {
        std::vector<cplx> I(N, 0.0);
        auto seg = [&](std::size_t j) {
            return 0.5 * dx * (g[j] + g[j + 1]) - dx * dx / 12.0 * (gp[j + 1] - gp[j]);
        };
        if (anchor == Anchor::Infinity) {
            for (std::size_t j = N - 1; j-- > j0;)
                I[j] = I[j + 1] - seg(j);
        } else {
            for (std::size_t j = j0; j + 1 < N; ++j)
                I[j + 1] = I[j] + seg(j);
        }
        gp = g;
        g = std::move(I);
    }
    GridFunction out = f;
    for (std::size_t j = 0; j < N; ++j)
        out[j] = j >= j0 ? g[j] : cplx(0.0);
    return out;
}

GridFunction by_generator_principal(double beta, const GridFunction& f)
{
    require_beta(beta);
    const std::size_t j0 = origin_index(f);
    check_resolved(f, ApplyOptions{}, "by_generator");
    GridFunction d = multiply_spectrum(f, [](double xi) { return cplx(0, xi); });
    for (std::size_t j = 0; j < d.size(); ++j)
        d[j] = j >= j0 ? by_flow_velocity(FlowSign::Plus, beta, f.coord(0, static_cast<int>(j))) * d[j] : cplx(0.0);
    return d;
}

GridFunction by_generator_correction_term(int k, double beta, const GridFunction& f)
{
    if (k < 1)
        throw InvalidArgument("by_generator_correction_term: k must be >= 1");
    require_beta(beta);
    const std::size_t j0 = origin_index(f);
    check_resolved(f, ApplyOptions{}, "by_generator");
    const double a = kTwoPi / beta;
    GridFunction g = multiply_spectrum(f, [&](double xi) { return std::pow(cplx(0, xi) / cplx(-a, xi), k); });
    for (std::size_t j = 0; j < g.size(); ++j)
        g[j] = j >= j0 ? kTwoPi * std::exp(-a * f.coord(0, static_cast<int>(j))) * g[j] : cplx(0.0);
    return g;
}

GridFunction by_generator_correction(int n, double beta, const GridFunction& f)
{
    GridFunction acc = f;
    acc *= 0.0;
    for (int k = 1; k <= n; ++k)
        acc += by_generator_correction_term(k, beta, f);
    return acc;
}

GridFunction by_generator_formula(int n, double beta, const GridFunction& f, int correction_sign)
{
    if (n < 0)
        throw InvalidArgument("by_generator_formula: n must be >= 0");
    if (correction_sign != 1 && correction_sign != -1)
        throw InvalidArgument("by_generator_formula: sign must be +1 or -1");
    GridFunction out = by_generator_principal(beta, f);
    if (n > 0) {
        GridFunction c = by_generator_correction(n, beta, f);
        c *= static_cast<double>(correction_sign);
        out += c;
    }
    return out;
}

GridFunction by_generator_oracle(int n, double beta, const GridFunction& f, double h, Anchor anchor)
{
    if (!(h > 0))
        throw InvalidArgument("by_generator_oracle: h must be > 0");
    return central4_grid([&](double t) { return by_pullback(n, {beta, t}, f, anchor); }, h);
}

double half_line_rel_err(const GridFunction& a, const GridFunction& b)
{
    const std::size_t j0 = origin_index(b);
    double num = 0, den = 0;
    for (std::size_t j = j0; j < b.size(); ++j) {
        num += std::norm(a[j] - b[j]);
        den += std::norm(b[j]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::array<double, 2> by_spacetime_field(SpacetimeRegion region, double beta, double x0, double x1)
{
    require_beta(beta);
    const double a = kTwoPi / beta;
    double xp = x0 + x1, xm = x0 - x1;
    double ep = std::expm1(-a * xp);
    double em = region == SpacetimeRegion::ForwardCone ? std::expm1(-a * xm) : std::expm1(a * xm);
    return {0.5 * beta * (ep + em), 0.5 * beta * (ep - em)};
}

std::array<double, 2> by_spacetime_flow(SpacetimeRegion region, double beta, double t, double x0, double x1)
{
    double xp = x0 + x1, xm = x0 - x1;
    double np = by_flow(FlowSign::Plus, {beta, t}, xp);
    double nm = by_flow(region == SpacetimeRegion::ForwardCone ? FlowSign::Plus : FlowSign::Minus, {beta, t}, xm);
    return {0.5 * (np + nm), 0.5 * (np - nm)};
}

GridFunction by_spacetime_generator(SpacetimeRegion region, double beta, const GridFunction& f)
{
    require_beta(beta);
    if (f.dim() != 2)
        throw InvalidArgument("by_spacetime_generator: expects an (x0, x1) plane grid");
    check_resolved(f, ApplyOptions{}, "by_spacetime_generator");
    GridFunction d0 = f, d1 = f;
    dft_forward(d0);
    for (std::size_t i = 0; i < d0.size(); ++i) {
        Coord k = d0.frequency(i);
        d1[i] = d0[i] * cplx(0, k[1]);
        d0[i] *= cplx(0, k[0]);
    }
    dft_inverse(d0);
    dft_inverse(d1);
    GridFunction out = f;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Coord x = f.point(i);
        double xp = x[0] + x[1], xm = x[0] - x[1];
        bool in = region == SpacetimeRegion::ForwardCone ? (xp >= 0 && xm >= 0) : (xp >= 0 && xm <= 0);
        if (!in) {
            out[i] = 0;
            continue;
        }
        auto c = by_spacetime_field(region, beta, x[0], x[1]);
        out[i] = c[0] * d0[i] + c[1] * d1[i];
    }
    return out;
}

cplx fio_symbol(int n, double beta, double xi)
{
    require_beta(beta);
    const double a = kTwoPi / beta;
    cplx r = cplx(0, xi) / cplx(-a, xi);
    cplx acc = 0, pw = 1;
    for (int k = 1; k <= n; ++k) {
        pw *= r;
        acc += pw;
    }
    return acc;
}

GridFunction half_line_grid(int n, double extent) { return GridFunction::line(n, extent); }

GridFunction half_line_gaussian(double center, double width, int n, double extent)
{
    GridFunction g = half_line_grid(n, extent);
    g.fill([&](const Coord& x) {
        double u = (x[0] - center) / width;
        return cplx(std::exp(-0.5 * u * u), 0);
    });
    return g;
}

double by_probe_center(double beta) { return 0.6 * std::sqrt(beta); }

GridFunction by_probe(double beta, int n, double extent)
{
    double c = by_probe_center(beta);
    return half_line_gaussian(c, c / 6.0, n, extent);
}

FioSymbolReport fio_symbol_report(int n, double beta)
{
    if (n < 1)
        throw InvalidArgument("fio_symbol_report: n must be >= 1");
    require_beta(beta);
    FioSymbolReport out;
    auto& rep = out.report;
    rep.suite = "nonlocal.fio_symbol";
    double sup = 0;
    for (int e = -3; e <= 6; ++e)
        for (double m : {1.0, 2.0, 5.0})
            for (double s : {-1.0, 1.0}) {
                double xi = s * m * std::pow(10.0, e);
                double v = std::abs(fio_symbol(n, beta, xi));
                out.rows.push_back({xi, v});
                sup = std::max(sup, v);
            }
    std::sort(out.rows.begin(), out.rows.end(), [](const FioRow& a, const FioRow& b) { return a.xi < b.xi; });
    rep.at_most("symbol bounded by n", sup, static_cast<double>(n));
    rep.near("|a(xi)| -> n at |xi| = 1e6", std::abs(fio_symbol(n, beta, 1e6)), static_cast<double>(n), 1e-4 * n);
    rep.at_most("a(0) = 0", std::abs(fio_symbol(n, beta, 0.0)), 0.0);
    // theta(x, xi) = x (xi + 2 pi i/beta): imaginary shift per unit x independent of xi and n
    double shift_dev = 0;
    for (double xi : {-50.0, 0.0, 3.0, 400.0}) {
        cplx theta = 1.7 * cplx(xi, kTwoPi / beta);
        shift_dev = std::max(shift_dev, std::abs(theta.imag() / 1.7 - kTwoPi / beta));
    }
    rep.at_most("phase shift 2 pi/beta independent of xi", shift_dev, 1e-14);

    // modulations k = K/width with K = 4, 8, 16 keep the probes in the same asymptotic regime for
    // every beta; the finer grid keeps k + spread below Nyquist/2 for the narrow beta = 1 probe
    GridFunction shape = half_line_grid(32768);
    double c = by_probe_center(beta);
    const std::vector<double> ks{24 / c, 48 / c, 96 / c};
    auto corr = mapping_order_estimate([&](const GridFunction& g) { return by_generator_correction(n, beta, g); },
                                       {0.0, 1.0}, shape, ks, c / 6.0, c);
    auto princ = mapping_order_estimate([&](const GridFunction& g) { return by_generator_principal(beta, g); },
                                        {0.0, 1.0}, shape, ks, c / 6.0, c);
    rep.near("correction order", corr.mean, 0.0, 0.2);
    rep.near("principal order", princ.mean, 1.0, 0.1);
    return out;
}

} // namespace modflow
