#include "modflow/quadrature.hpp"

#include <cmath>

namespace modflow {

GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        throw InvalidArgument("gauss_legendre: n must be >= 1");
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2 / ((1 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n == 1) {
        r.nodes[0] = 0;
        r.weights[0] = 2;
    }
    return r;
}

namespace {

void filon_coefficients(double th, double& al, double& be, double& ga)
{
    if (std::abs(th) < 1e-2) {
        double t2 = th * th, t3 = t2 * th, t4 = t2 * t2, t5 = t4 * th;
        al = 2 * t3 / 45 - 2 * t5 / 315;
        be = 2.0 / 3 + 2 * t2 / 15 - 4 * t4 / 105;
        ga = 4.0 / 3 - 2 * t2 / 15 + t4 / 210;
        return;
    }
    double s = std::sin(th), c = std::cos(th), t3 = th * th * th;
    al = (th * th + th * s * c - 2 * s * s) / t3;
    be = 2 * (th * (1 + c * c) - 2 * s * c) / t3;
    ga = 4 * (s - th * c) / t3;
}

void require_odd(const std::vector<double>& g)
{
    if (g.size() < 3 || g.size() % 2 == 0)
        throw InvalidArgument("filon: needs an odd number (>= 3) of samples");
}

} // namespace

double filon_sin(const std::vector<double>& g, double x0, double h, double k)
{
    require_odd(g);
    const std::size_t n = g.size() - 1;
    double al, be, ga;
    filon_coefficients(k * h, al, be, ga);
    double xn = x0 + n * h;
    double se = 0, so = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        double v = g[j] * std::sin(k * (x0 + j * h));
        if (j % 2 == 0)
            se += (j == 0 || j == n) ? 0.5 * v : v;
        else
            so += v;
    }
    return h * (al * (g[0] * std::cos(k * x0) - g[n] * std::cos(k * xn)) + be * se + ga * so);
}

double filon_cos(const std::vector<double>& g, double x0, double h, double k)
{
    require_odd(g);
    const std::size_t n = g.size() - 1;
    double al, be, ga;
    filon_coefficients(k * h, al, be, ga);
    double xn = x0 + n * h;
    double se = 0, so = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        double v = g[j] * std::cos(k * (x0 + j * h));
        if (j % 2 == 0)
            se += (j == 0 || j == n) ? 0.5 * v : v;
        else
            so += v;
    }
    return h * (al * (g[n] * std::sin(k * xn) - g[0] * std::sin(k * x0)) + be * se + ga * so);
}

} // namespace modflow
