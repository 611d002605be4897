#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "modflow/errors.hpp"

namespace modflow {

template <class T>
struct QuadResult {
    T value{};
    double error = 0;
    int intervals = 0;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 200000;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class F>
auto gk15(const F& f, double a, double b)
{
    using T = std::decay_t<decltype(f(a))>;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T resk = fc * kWgk[7];
    T resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        T f1 = f(c - dx), f2 = f(c + dx);
        resk += (f1 + f2) * kWgk[j];
        if (j % 2 == 1)
            resg += (f1 + f2) * kWg[j / 2];
    }
    struct {
        T value;
        double error;
    } r{resk * h, magnitude((resk - resg) * h)};
    return r;
}

} // namespace detail

// globally adaptive Gauss-Kronrod over [a, b], initially split into `panels` pieces.
// Deterministic: the interval with the largest error is split first, ties by creation order.
template <class F>
auto integrate(const F& f, double a, double b, const QuadOptions& opt = {}, int panels = 1)
{
    using T = std::decay_t<decltype(f(a))>;
    struct Piece {
        double a, b;
        T value;
        double error;
        long id;
    };
    auto cmp = [](const Piece& x, const Piece& y) { return x.error < y.error || (x.error == y.error && x.id > y.id); };
    std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> heap(cmp);
    long next = 0;
    T total{};
    double err = 0;
    if (panels < 1)
        panels = 1;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + (b - a) * i / panels, x1 = a + (b - a) * (i + 1) / panels;
        auto r = detail::gk15(f, x0, x1);
        heap.push({x0, x1, r.value, r.error, next++});
        total += r.value;
        err += r.error;
    }
    int count = panels;
    while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
        if (count >= opt.max_intervals)
            throw QuadratureFailure("integrate: interval budget exhausted, error estimate " + std::to_string(err));
        Piece p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        auto l = detail::gk15(f, p.a, m);
        auto r = detail::gk15(f, m, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push({p.a, m, l.value, l.error, next++});
        heap.push({m, p.b, r.value, r.error, next++});
        ++count;
        if (err < 0)
            err = 0;
    }
    // resum in a fixed order to avoid drift from the running updates
    std::vector<Piece> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    QuadResult<T> res;
    double e = 0;
    for (const auto& p : all) {
        res.value += p.value;
        e += p.error;
    }
    res.error = e;
    res.intervals = count;
    return res;
}

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

// Filon-Simpson rules for tabulated g on x_j = x0 + j h, j = 0..2M (odd sample count)
double filon_sin(const std::vector<double>& g, double x0, double h, double k);
double filon_cos(const std::vector<double>& g, double x0, double h, double k);

} // namespace modflow
