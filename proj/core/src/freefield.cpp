#include "modflow/freefield.hpp"
#include "modflow/errors.hpp"
#include "modflow/util.hpp"

#include <algorithm>
#include <cmath>

namespace modflow {

namespace {

constexpr double kPi = M_PI;

void require_eps(double eps)
{
    if (!(eps > 0) || !std::isfinite(eps))
        throw InvalidArgument("two_point: eps must be > 0");
}

void require_mass(double m)
{
    if (!(m >= 0) || !std::isfinite(m))
        throw InvalidArgument("mass must be >= 0");
}

// integrate f over [0, P] in panels matched to the oscillation, growing P until the
// supplied tail bound is below tol relative to the running value
template <class F, class Tail>
auto integrate_to_infinity(const F& f, double p0, double omega_osc, const Tail& tail, double tail_tol,
                           const QuadOptions& quad)
{
    using T = std::decay_t<decltype(f(1.0))>;
    const double width = omega_osc > 0 ? kPi / omega_osc : p0;
    T total{};
    double a = 0, b = p0;
    for (int round = 0; round < 60; ++round) {
        int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
        if (panels > 200000)
            throw QuadratureFailure("momentum quadrature: too many oscillation panels");
        total += integrate(f, a, b, quad, panels).value;
        if (tail(b) <= tail_tol * std::max(std::abs(total), 1e-300))
            return total;
        a = b;
        b *= 1.5;
    }
    throw QuadratureFailure("momentum quadrature: tail bound not met");
}

double gauss(double u, double sigma) { return std::exp(-0.5 * u * u / (sigma * sigma)) / (sigma * std::sqrt(2 * kPi)); }

} // namespace

cplx two_point_massless(const FourVector& x, const FourVector& y, double eps)
{
    require_eps(eps);
    require_finite(x, "two_point");
    require_finite(y, "two_point");
    FourVector d = x - y;
    double r2 = d.x1 * d.x1 + d.x2 * d.x2 + d.x3 * d.x3;
    cplx tau(d.x0, -eps);
    return kMasslessTwoPoint / (tau * tau - r2);
}

cplx two_point_quadrature(double m, const FourVector& x, const FourVector& y, double eps, const TwoPointOptions& opt)
{
    require_eps(eps);
    require_mass(m);
    require_finite(x, "two_point");
    require_finite(y, "two_point");
    FourVector d = x - y;
    const double t = d.x0;
    const double r = d.spatial_norm();
    const bool at_origin = r < 1e-12;
    auto f = [&](double p) -> cplx {
        double w = std::sqrt(p * p + m * m);
        double radial = at_origin ? p * p : p * std::sin(p * r) / r;
        double amp = radial / w * std::exp(-w * eps);
        return amp * cplx(std::cos(w * t), -std::sin(w * t));
    };
    // |integrand| <= p e^{-p eps} at r = 0 and <= e^{-p eps}/r otherwise
    auto tail = [&](double P) {
        double e = std::exp(-P * eps);
        return at_origin ? e * (P / eps + 1 / (eps * eps)) : e / (eps * r);
    };
    cplx I = integrate_to_infinity(f, 20.0 / eps, r + std::abs(t), tail, opt.tail_tol, opt.quad);
    return I / (4 * kPi * kPi);
}

cplx two_point(double m, const FourVector& x, const FourVector& y, double eps, const TwoPointOptions& opt)
{
    require_mass(m);
    if (m == 0)
        return two_point_massless(x, y, eps);
    return two_point_quadrature(m, x, y, eps, opt);
}

cplx massless_constant_oracle(double t, double r, double eps)
{
    cplx q = two_point_quadrature(0.0, {t, r, 0, 0}, {0, 0, 0, 0}, eps);
    cplx tau(t, -eps);
    return q * (tau * tau - r * r);
}

double pauli_jordan(double m, double t, double r, double sigma, const QuadOptions& quad)
{
    require_mass(m);
    if (!(sigma > 0))
        throw InvalidArgument("pauli_jordan: sigma must be > 0");
    if (!(r >= 0))
        throw InvalidArgument("pauli_jordan: r must be >= 0");
    const bool at_origin = r < 1e-12;
    auto f = [&](double p) {
        double w = std::sqrt(p * p + m * m);
        double radial = at_origin ? p * p : p * std::sin(p * r) / r;
        return radial * std::sin(w * t) / w * std::exp(-0.5 * w * w * sigma * sigma);
    };
    auto tail = [&](double P) {
        // |integrand| <= p e^{-p^2 sigma^2 / 2} max(1, p) ... bounded by the Gaussian tail times P^2
        return (P * P + 1) * std::exp(-0.5 * P * P * sigma * sigma) / (sigma * sigma);
    };
    double I = integrate_to_infinity(f, 6.0 / sigma, r + std::abs(t), tail, 1e-13, quad);
    return -I / (2 * kPi * kPi);
}

double pauli_jordan_massless(double t, double r, double sigma)
{
    if (r < 1e-8)
        return -t / (sigma * sigma) * gauss(t, sigma) / (2 * kPi);
    return -(gauss(t - r, sigma) - gauss(t + r, sigma)) / (4 * kPi * r);
}

double pauli_jordan_causal_leak(double m, double sigma, double margin, double t_max, double r_max, int n)
{
    double worst = 0;
    for (int i = 0; i <= n; ++i) {
        double t = -t_max + 2 * t_max * i / n;
        double r0 = std::abs(t) + margin;
        for (int j = 0; j <= n; ++j) {
            double r = r0 + (r_max - r0) * j / n;
            double v = m == 0 ? pauli_jordan_massless(t, r, sigma) : pauli_jordan(m, t, r, sigma);
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

namespace {

constexpr double kD2[5] = {-1.0 / 12, 4.0 / 3, -2.5, 4.0 / 3, -1.0 / 12};
constexpr double kD1[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};

} // namespace

double pauli_jordan_kg_residual(double m, double t, double r, double h, double sigma)
{
    if (!(r > 2 * h))
        throw InvalidArgument("pauli_jordan_kg_residual: need r > 2h");
    auto D = [&](double tt, double rr) {
        return m == 0 ? pauli_jordan_massless(tt, rr, sigma) : pauli_jordan(m, tt, rr, sigma);
    };
    double dtt = 0, drr = 0, dr = 0;
    for (int k = 0; k < 5; ++k) {
        dtt += kD2[k] * D(t + (k - 2) * h, r);
        double v = D(t, r + (k - 2) * h);
        drr += kD2[k] * v;
        dr += kD1[k] * v;
    }
    dtt /= h * h;
    drr /= h * h;
    dr /= h;
    double lap = drr + 2 * dr / r;
    return std::abs(dtt - lap + m * m * D(t, r)) / std::max(1.0, std::abs(dtt) + std::abs(lap));
}

double two_point_kg_residual(double m, const FourVector& x, const FourVector& y, double eps, double h)
{
    auto W = [&](const FourVector& p) { return two_point(m, p, y, eps); };
    cplx dtt{}, lap{};
    for (int axis = 0; axis < 4; ++axis) {
        cplx acc{};
        for (int k = 0; k < 5; ++k) {
            FourVector p = x;
            p[axis] += (k - 2) * h;
            acc += kD2[k] * W(p);
        }
        acc /= h * h;
        if (axis == 0)
            dtt = acc;
        else
            lap += acc;
    }
    return std::abs(dtt - lap + m * m * W(x)) / std::max(1.0, std::abs(dtt) + std::abs(lap));
}

FourVector boost01(double s, const FourVector& x)
{
    double c = std::cosh(s), sh = std::sinh(s);
    return {c * x.x0 + sh * x.x1, sh * x.x0 + c * x.x1, x.x2, x.x3};
}

KmsResult kms_boost_fit(const FourVector& x, const FourVector& y, const KmsOptions& opt)
{
    if (!contains(Region::right_wedge(), x) || !contains(Region::right_wedge(), y))
        throw DomainError("kms_boost_check: x and y must lie in the right wedge");
    if (!(opt.window > 0) || !is_power_of_two(opt.samples) || !(opt.e_hi > opt.e_lo) || !(opt.e_lo > 0))
        throw InvalidArgument("kms_boost_check: bad window, sample count or energy band");
    GridFunction g = GridFunction::line(opt.samples, opt.window);
    for (std::size_t j = 0; j < g.size(); ++j)
        g[j] = two_point_massless(boost01(g.coord(0, static_cast<int>(j)), x), y, opt.eps);
    KmsResult res;
    double peak = g.max_abs();
    res.leakage = std::max(std::abs(g[0]), std::abs(g[g.size() - 1])) / peak;
    if (res.leakage > opt.leak_tol)
        throw WindowTooSmall("kms_boost_check: orbit correlator has not decayed at the window edge");
    res.decay_ratio = std::abs(g[static_cast<std::size_t>(opt.samples / 2 + opt.samples / 8)]) /
                      std::abs(g[static_cast<std::size_t>(opt.samples / 2)]);
    dft_forward(g);
    const int n = opt.samples;
    std::vector<double> e, lr;
    for (int k = 1; k < n / 2; ++k) {
        double E = g.wavenumber(0, k);
        if (E < opt.e_lo || E > opt.e_hi)
            continue;
        double pos = std::abs(g[static_cast<std::size_t>(k)]);
        double neg = std::abs(g[static_cast<std::size_t>(n - k)]);
        e.push_back(E);
        lr.push_back(std::log(neg / pos));
    }
    if (e.size() < 3)
        throw WindowTooSmall("kms_boost_check: fewer than three spectral bins in the fit band");
    res.beta = fit_slope(e, lr);
    res.E = std::move(e);
    res.log_ratio = std::move(lr);
    return res;
}

VerificationReport kms_boost_check(const FourVector& x, const FourVector& y, const KmsOptions& opt)
{
    VerificationReport rep;
    rep.suite = "freefield.kms";
    KmsResult a = kms_boost_fit(x, y, opt);
    KmsOptions half = opt;
    half.eps = 0.5 * opt.eps;
    KmsResult b = kms_boost_fit(x, y, half);
    const double two_pi = 2 * kPi;
    rep.near("fitted beta (eps)", a.beta, two_pi, 0.02 * two_pi);
    rep.near("fitted beta (eps/2)", b.beta, two_pi, 0.02 * two_pi);
    rep.at_most("beta shift under eps halving", std::abs(a.beta - b.beta) / two_pi, 0.02);
    rep.at_most("orbit correlator decays", a.decay_ratio, 1e-3);
    rep.annotate("kms_eps", fmt(opt.eps));
    rep.annotate("kms_transform", "G^(E) = int G(s) e^{-iEs} ds");
    return rep;
}

RadialFunction RadialFunction::sample(const std::function<double(double)>& fn, std::size_t n, double dr)
{
    if (n < 2 || !(dr > 0))
        throw InvalidArgument("RadialFunction: need n >= 2 and dr > 0");
    RadialFunction out;
    out.dr = dr;
    out.f.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        out.f[j] = fn(out.r(j));
    return out;
}

double RadialFunction::l2() const
{
    double acc = 0;
    for (std::size_t j = 0; j < f.size(); ++j)
        acc += f[j] * f[j] * r(j) * r(j);
    return std::sqrt(4 * kPi * acc * dr);
}

RadialFunction operator-(const RadialFunction& a, const RadialFunction& b)
{
    if (a.size() != b.size() || a.dr != b.dr)
        throw InvalidArgument("RadialFunction: shape mismatch");
    RadialFunction out = a;
    for (std::size_t j = 0; j < a.size(); ++j)
        out.f[j] -= b.f[j];
    return out;
}

RadialFunction operator+(const RadialFunction& a, const RadialFunction& b)
{
    if (a.size() != b.size() || a.dr != b.dr)
        throw InvalidArgument("RadialFunction: shape mismatch");
    RadialFunction out = a;
    for (std::size_t j = 0; j < a.size(); ++j)
        out.f[j] += b.f[j];
    return out;
}

double radial_rel_err(const RadialFunction& a, const RadialFunction& b) { return (a - b).l2() / b.l2(); }

RadialFunction apply_radial_multiplier(const RadialFunction& f, const std::function<double(double)>& M,
                                       bool check_edge)
{
    const std::size_t n = f.size();
    double peak = 0;
    for (double v : f.f)
        peak = std::max(peak, std::abs(v));
    double edge = 0;
    for (std::size_t j = n - std::max<std::size_t>(1, n / 100); j < n; ++j)
        edge = std::max(edge, std::abs(f.f[j]));
    if (check_edge && peak > 0 && edge > 1e-10 * peak)
        throw DomainError("radial multiplier: input does not decay before the box edge");
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j)
        u[j] = f.r(j) * f.f[j];
    std::vector<double> U = dst1(u);
    double hi = 0, tot = 0;
    for (std::size_t l = 0; l < n; ++l) {
        tot += U[l] * U[l];
        if (l >= n / 2)
            hi += U[l] * U[l];
    }
    if (tot > 0 && hi / tot > 1e-8)
        throw AliasWarning("radial multiplier: spectral energy above Nyquist/2 is " + fmt(hi / tot));
    const double box = f.box();
    for (std::size_t l = 0; l < n; ++l)
        U[l] *= M(static_cast<double>(l + 1) * kPi / box);
    std::vector<double> v = dst1(U);
    RadialFunction out = f;
    const double norm = 2.0 * static_cast<double>(n + 1);
    for (std::size_t j = 0; j < n; ++j)
        out.f[j] = v[j] / norm / f.r(j);
    return out;
}

double mass_shift_multiplier(double k, double m) { return std::sqrt(k) / std::pow(k * k + m * m, 0.25); }

RadialFunction mass_shift_exact(const RadialFunction& f, double m)
{
    require_mass(m);
    if (m == 0)
        return f;
    return apply_radial_multiplier(f, [m](double k) { return mass_shift_multiplier(k, m); });
}

double f_rest_R(double k, double m)
{
    if (m == 0)
        return 0.0;
    return k * (mass_shift_multiplier(k, m) - 1.0);
}

RadialFunction f_rest_integral(const RadialFunction& f, double m)
{
    require_mass(m);
    RadialFunction out = f;
    std::fill(out.f.begin(), out.f.end(), 0.0);
    if (m == 0)
        return out;

    // samples of s f(s) from s = 0, odd count for Filon
    std::vector<double> g{0.0};
    for (std::size_t j = 0; j < f.size(); ++j)
        g.push_back(f.r(j) * f.f[j]);
    if (g.size() % 2 == 0)
        g.pop_back();
    auto Fhat = [&](double k) { return filon_sin(g, 0.0, f.dr, k); };

    const double rmax = f.r(f.size() - 1);
    const double width = std::min(0.25, kPi / (2 * rmax));
    const double knyq = kPi / f.dr;
    const auto gl = gauss_legendre(8);
    std::vector<double> nodes, weights;
    auto add_panel = [&](double a, double b) {
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
            weights.push_back(0.5 * (b - a) * gl.weights[i]);
        }
    };
    // geometric grading towards k = 0, where R(k)/k has a sqrt(k) cusp
    for (int j = 40; j >= 0; --j)
        add_panel(width * std::ldexp(1.0, -j - 1), width * std::ldexp(1.0, -j));
    std::vector<double> F;
    F.reserve(nodes.size());
    for (double k : nodes)
        F.push_back(Fhat(k));
    double peak = 0;
    for (double v : F)
        peak = std::max(peak, std::abs(v));
    int quiet = 0;
    for (double a = width; a < knyq && quiet < 40; a += width) {
        std::size_t first = nodes.size();
        add_panel(a, std::min(a + width, knyq));
        double panel_max = 0;
        for (std::size_t i = first; i < nodes.size(); ++i) {
            F.push_back(Fhat(nodes[i]));
            panel_max = std::max(panel_max, std::abs(F.back()));
        }
        peak = std::max(peak, panel_max);
        quiet = panel_max < 1e-15 * peak ? quiet + 1 : 0;
    }
    std::vector<double> coef(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        coef[i] = weights[i] * (mass_shift_multiplier(nodes[i], m) - 1.0) * F[i];
    parallel_for(f.size(), [&](std::size_t j) {
        double r = f.r(j), acc = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += coef[i] * std::sin(nodes[i] * r);
        out.f[j] = 4 * kPi * acc / r;
    });
    return out;
}

RadialFunction f_rest_kernel(const RadialFunction& f, double m, double c)
{
    RadialFunction J = f_rest_integral(f, m);
    for (double& v : J.f)
        v *= c;
    return J;
}

FRestCalibration calibrate_f_rest(const RadialFunction& f, double m)
{
    if (!(m > 0))
        throw InvalidArgument("calibrate_f_rest: needs m > 0");
    RadialFunction exact = mass_shift_exact(f, m);
    RadialFunction J = f_rest_integral(f, m);
    double num = 0, den = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double w = f.r(j) * f.r(j);
        num += w * (exact.f[j] - f.f[j]) * J.f[j];
        den += w * J.f[j] * J.f[j];
    }
    FRestCalibration c;
    c.constant = num / den;
    RadialFunction approx = f;
    for (std::size_t j = 0; j < f.size(); ++j)
        approx.f[j] += c.constant * J.f[j];
    c.rel_err = radial_rel_err(approx, exact);
    c.ratio_to_minus_4pi = c.constant / (-4 * kPi);
    return c;
}

double bogoliubov_beta(int sign, double k, double m1, double m2)
{
    if (sign != 1 && sign != -1)
        throw InvalidArgument("bogoliubov_beta: sign must be +1 or -1");
    double a = std::pow(k * k + m1 * m1, 0.25), b = std::pow(k * k + m2 * m2, 0.25);
    if (m1 == m2)
        return sign > 0 ? 1.0 : 0.0;
    return 0.5 * (a / b + sign * b / a);
}

RadialFunction bogoliubov_beta_apply(int sign, const RadialFunction& f, double m1, double m2)
{
    require_mass(m1);
    require_mass(m2);
    return apply_radial_multiplier(f, [=](double k) { return bogoliubov_beta(sign, k, m1, m2); });
}

HsProbe hs_probe(double m1, double m2, double window)
{
    require_mass(m1);
    require_mass(m2);
    if (!(window > 0))
        throw InvalidArgument("hs_probe: window must be > 0");
    HsProbe out;
    const double chi = std::sqrt(std::pow(kPi, 1.5) * window * window * window);
    double acc = 0, a = 0;
    for (double K : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0}) {
        auto f = [&](double k) {
            double b = bogoliubov_beta(-1, k, m1, m2);
            return b * b * k * k;
        };
        acc += integrate(f, a, K, QuadOptions{1e-14, 1e-12, 100000}, 8).value;
        a = K;
        out.trend.emplace_back(K, std::sqrt(acc / (2 * kPi * kPi)) * chi);
    }
    out.value = out.trend.back().second;
    return out;
}

} // namespace modflow
