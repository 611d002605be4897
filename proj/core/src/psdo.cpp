#include "modflow/psdo.hpp"
#include "modflow/errors.hpp"
#include "modflow/util.hpp"

#include <algorithm>
#include <cmath>

namespace modflow {

Symbol Symbol::multiplier(double order, int dim, std::function<cplx(const Coord& xi)> p)
{
    Symbol s;
    s.order = order;
    s.dim = dim;
    s.x_independent = true;
    s.eval = [p = std::move(p)](const Coord&, const Coord& xi) { return p(xi); };
    return s;
}

void Symbol::validate() const
{
    if (!eval)
        throw InvalidArgument("Symbol: missing evaluation callback");
    if (dim != 1 && dim != 2 && dim != 3)
        throw InvalidArgument("Symbol: dimension must be 1, 2 or 3");
    if (!(delta >= 0 && delta <= rho && rho <= 1 && delta < 1))
        throw InvalidArgument("Symbol: type must satisfy 0 <= delta <= rho <= 1, delta < 1");
}

Symbol energy_symbol(double m, int dim, bool inverse)
{
    if (!(m >= 0))
        throw InvalidArgument("energy_symbol: m must be >= 0");
    double e = inverse ? -0.5 : 0.5;
    return Symbol::multiplier(inverse ? -1.0 : 1.0, dim, [m, e](const Coord& xi) {
        double k = norm3(xi);
        return cplx(std::pow(k * k + m * m, e), 0.0);
    });
}

VerificationReport symbol_estimate_check(const Symbol& p, int maxorder, const SymbolProbe& probe)
{
    p.validate();
    if (maxorder < 0 || maxorder > 2)
        throw InvalidArgument("symbol_estimate_check: maxorder must be 0..2");
    VerificationReport rep;
    rep.suite = "psdo.symbol_estimate";

    // mixed derivative d_xi^a d_x^b along the first axis by nested 4th-order stencils
    auto deriv = [&](double x, double xi, int a, int b) {
        const double w[5] = {1, -8, 0, 8, -1};
        auto val = [&](double xx, double kk) { return p.eval({xx, 0, 0}, {kk, 0, 0}); };
        std::function<cplx(double, double, int, int)> d = [&](double xx, double kk, int aa, int bb) -> cplx {
            if (aa > 0) {
                double h = 1e-3 * (1 + std::abs(kk));
                cplx s = 0;
                for (int i = 0; i < 5; ++i)
                    if (w[i] != 0)
                        s += w[i] * d(xx, kk + (i - 2) * h, aa - 1, bb);
                return s / (12 * h);
            }
            if (bb > 0) {
                double h = 1e-3;
                cplx s = 0;
                for (int i = 0; i < 5; ++i)
                    if (w[i] != 0)
                        s += w[i] * d(xx + (i - 2) * h, kk, aa, bb - 1);
                return s / (12 * h);
            }
            return val(xx, kk);
        };
        return std::abs(d(x, xi, a, b));
    };

    auto sup_over = [&](double X, int a, int b) {
        double best = 0;
        const std::vector<double> xs = p.x_independent ? std::vector<double>{0.0} : probe.x_points;
        for (double x : xs) {
            for (int i = 0; i < probe.n_xi; ++i) {
                double xi = -X + 2 * X * i / (probe.n_xi - 1);
                double weight = std::pow(1 + std::abs(xi), -(p.order + p.delta * b - p.rho * a));
                double v = deriv(x, xi, a, b) * weight;
                best = std::max(best, v);
            }
        }
        return best;
    };

    for (int a = 0; a <= maxorder; ++a) {
        for (int b = 0; a + b <= maxorder; ++b) {
            if (p.x_independent && b > 0)
                continue;
            double s1 = sup_over(probe.xi_max, a, b);
            double s2 = sup_over(2 * probe.xi_max, a, b);
            double growth = s1 > 0 ? s2 / s1 - 1.0 : (s2 > 0 ? INFINITY : 0.0);
            std::string id = "alpha=" + std::to_string(a) + ",beta=" + std::to_string(b);
            bool finite = std::isfinite(s1) && std::isfinite(s2);
            rep.exact(id + " margin finite", finite, s2);
            rep.at_most(id + " growth on 2x range", growth, 0.10, "sup=" + fmt(s1));
        }
    }
    return rep;
}

void check_resolved(const GridFunction& f, const ApplyOptions& opt, const char* where)
{
    if (!opt.strict)
        return;
    double edge = edge_fraction(f);
    if (edge > opt.edge_tol)
        throw DomainError(std::string(where) + ": input does not decay at the box edge (wraparound)");
    double hb = high_band_fraction(f);
    if (hb > opt.alias_tol)
        throw AliasWarning(std::string(where) + ": spectral energy above Nyquist/2 is " + fmt(hb));
}

GridFunction apply_psdo(const Symbol& p, const GridFunction& f, const ApplyOptions& opt)
{
    p.validate();
    if (p.dim != f.dim())
        throw InvalidArgument("apply_psdo: symbol and grid dimension differ");
    check_resolved(f, opt, "apply_psdo");
    GridFunction spec = f;
    dft_forward(spec);
    if (p.x_independent) {
        const Coord zero{0, 0, 0};
        for (std::size_t i = 0; i < spec.size(); ++i)
            spec[i] *= p.eval(zero, spec.frequency(i));
        dft_inverse(spec);
        return spec;
    }
    if (f.dim() != 1)
        throw InvalidArgument("apply_psdo: x-dependent symbols are supported in 1D only");
    const int n = f.n(0);
    GridFunction out = f;
    // e^{2 pi i j k / n} = e^{i x_j xi_k} e^{i pi k}, so the phase is absorbed by the DFT
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        Coord x{f.coord(0, static_cast<int>(j)), 0, 0};
        cplx acc = 0;
        for (int k = 0; k < n; ++k) {
            double ang = 2.0 * M_PI * static_cast<double>((j * static_cast<std::size_t>(k)) % n) / n;
            acc += p.eval(x, {f.wavenumber(0, k), 0, 0}) * spec[k] * cplx(std::cos(ang), std::sin(ang));
        }
        out[j] = acc / static_cast<double>(n);
    });
    return out;
}

double ExpansionTerm::value(double xi_abs, double m) const
{
    if (coefficient == 0)
        return 0;
    double mp = mass_power == 0 ? 1.0 : std::pow(m, mass_power);
    double xp = power == 0 ? 1.0 : std::pow(xi_abs, power);
    return coefficient * mp * xp;
}

double AsymptoticExpansion::partial_sum(double xi_abs, std::size_t nterms) const
{
    double s = 0;
    for (std::size_t i = 0; i < std::min(nterms, terms.size()); ++i)
        s += terms[i].value(xi_abs, m);
    return s;
}

double binomial(double a, int k)
{
    double c = 1;
    for (int j = 0; j < k; ++j)
        c *= (a - j) / (j + 1);
    return c;
}

AsymptoticExpansion energy_expansion(double m, int N, Regime regime, bool inverse)
{
    if (N < 1)
        throw InvalidArgument("energy_expansion: N must be >= 1");
    if (!(m >= 0))
        throw InvalidArgument("energy_expansion: m must be >= 0");
    AsymptoticExpansion e;
    e.regime = regime;
    e.inverse = inverse;
    e.m = m;
    double a = inverse ? -0.5 : 0.5;
    for (int k = 0; k <= N; ++k) {
        ExpansionTerm t;
        t.k = k;
        t.coefficient = binomial(a, k);
        if (regime == Regime::Ultrarelativistic) {
            // |xi|^{2a} (1 + m^2/xi^2)^a
            t.power = 2 * a - 2 * k;
            t.mass_power = 2 * k;
            if (m == 0 && k > 0)
                t.coefficient = 0;
        } else {
            // m^{2a} (1 + xi^2/m^2)^a
            t.power = 2 * k;
            t.mass_power = 2 * a - 2 * k;
        }
        e.terms.push_back(t);
    }
    return e;
}

RemainderFit expansion_remainder_order(double m, int N, double xi_lo, double xi_hi, bool inverse, int samples)
{
    if (N < 1 || samples < 2 || !(xi_lo > 0) || !(xi_hi > xi_lo))
        throw InvalidArgument("expansion_remainder_order: bad arguments");
    if (m > 0 && xi_lo <= 2 * m)
        throw InvalidArgument("expansion_remainder_order: range must lie in (2m, inf)");
    RemainderFit out;
    if (m == 0) {
        out.identically_zero = true;
        return out;
    }
    const long double a = inverse ? -0.5L : 0.5L;
    std::vector<double> lx, ly;
    for (int i = 0; i < samples; ++i) {
        long double xi = xi_lo * std::pow(static_cast<long double>(xi_hi / xi_lo), static_cast<long double>(i) / (samples - 1));
        long double exact = std::pow(xi * xi + static_cast<long double>(m) * m, a);
        long double sum = 0, c = 1;
        for (int k = 0; k < N; ++k) {
            sum += c * std::pow(static_cast<long double>(m), 2.0L * k) * std::pow(xi, 2 * a - 2.0L * k);
            c *= (a - k) / (k + 1);
        }
        double r = static_cast<double>(std::abs(exact - sum));
        out.xi.push_back(static_cast<double>(xi));
        out.remainder.push_back(r);
        if (r > 0) {
            lx.push_back(std::log(static_cast<double>(xi)));
            ly.push_back(std::log(r));
        }
    }
    out.slope = fit_slope(lx, ly);
    return out;
}

GridFunction apply_energy_truncated(const GridFunction& f, double m, int N, bool regime_split, bool inverse,
                                    bool smooth_split, const ApplyOptions& opt)
{
    if (N < 1)
        throw InvalidArgument("apply_energy_truncated: N must be >= 1");
    check_resolved(f, opt, "apply_energy_truncated");
    auto ur = energy_expansion(m, N, Regime::Ultrarelativistic, inverse);
    auto nr = m > 0 ? energy_expansion(m, N, Regime::Nonrelativistic, inverse) : AsymptoticExpansion{};
    GridFunction spec = f;
    dft_forward(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double k = norm3(spec.frequency(i));
        double vu = 0, vn = 0;
        if (k > 0)
            vu = ur.partial_sum(k, static_cast<std::size_t>(N));
        else if (!inverse)
            vu = 0;  // only the |xi| term survives at xi = 0 and it vanishes there
        if (m > 0)
            vn = nr.partial_sum(k, static_cast<std::size_t>(N));
        double w;  // weight of the ultrarelativistic branch
        if (!regime_split || m == 0)
            w = 1;
        else if (!smooth_split)
            w = k > m ? 1 : 0;
        else
            w = 0.5 * (1 + std::tanh((k - m) / (0.1 * m)));
        spec[i] *= w * vu + (1 - w) * vn;
    }
    dft_inverse(spec);
    return spec;
}

double anti_locality_probe(const GridFunction& f, double m, const std::function<bool(const Coord&)>& inside)
{
    if (f.max_abs() == 0)
        return 0;
    GridFunction g = apply_psdo(energy_symbol(m, f.dim()), f);
    double out = 0, tot = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double e = std::norm(g[i]);
        tot += e;
        if (!inside(g.point(i)))
            out += e;
    }
    return tot > 0 ? std::sqrt(out / tot) : 0.0;
}

double sobolev_norm(const GridFunction& f, double s)
{
    GridFunction spec = f;
    dft_forward(spec);
    // unitary continuum transform: |f^(xi)|^2 = (dx^d / (2 pi)^d) |F_k|^2 ; dxi = (2 pi)^d / L^d
    double dV = f.cell_volume();
    double total = 0;
    double vol = 1;
    for (int a = 0; a < f.dim(); ++a)
        vol *= f.extent(a);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Coord k = spec.frequency(i);
        double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        total += std::pow(1 + k2, s) * std::norm(spec[i]);
    }
    return std::sqrt(total * dV * dV / vol);
}

OrderFit mapping_order_estimate(const GridOperator& op, const std::vector<double>& s_list, const GridFunction& shape,
                                const std::vector<double>& ks, double width, double center)
{
    if (ks.size() < 2)
        throw InvalidArgument("mapping_order_estimate: need at least two probe frequencies");
    OrderFit out;
    std::vector<GridFunction> probes, images;
    for (double K : ks) {
        GridFunction g = shape;
        g.fill([&](const Coord& x) {
            double y0 = x[0] - center;
            double r2 = y0 * y0 + x[1] * x[1] + x[2] * x[2];
            return cplx(std::exp(-r2 / (2 * width * width)) * std::cos(K * y0), 0.0);
        });
        images.push_back(op(g));
        probes.push_back(std::move(g));
    }
    double acc = 0;
    for (double s : s_list) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            lx.push_back(std::log(ks[i]));
            ly.push_back(std::log(sobolev_norm(images[i], s) / sobolev_norm(probes[i], s)));
        }
        double m = fit_slope(lx, ly);
        out.s.push_back(s);
        out.order.push_back(m);
        acc += m;
    }
    out.mean = s_list.empty() ? 0.0 : acc / static_cast<double>(s_list.size());
    return out;
}

} // namespace modflow
