#include "modflow/grid.hpp"
#include "modflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace modflow {

namespace {
// the FFTW planner is not re-entrant. Plans use FFTW_UNALIGNED so the chosen
// codelets, and hence the round-off, do not depend on buffer alignment.
std::mutex g_plan_mutex;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(int dim, std::array<int, 3> n, std::array<double, 3> extent)
    : dim_(dim), n_(n), L_(extent)
{
    if (dim < 1 || dim > 3)
        throw InvalidArgument("GridFunction: dimension must be 1, 2 or 3");
    for (int a = 0; a < 3; ++a) {
        if (a < dim) {
            if (!is_power_of_two(n[a]) || n[a] < 2)
                throw InvalidArgument("GridFunction: samples per axis must be a power of two >= 2");
            if (!(extent[a] > 0))
                throw InvalidArgument("GridFunction: extent must be > 0");
        } else {
            n_[a] = 1;
            L_[a] = 1.0;
        }
    }
    data_.assign(static_cast<std::size_t>(n_[0]) * n_[1] * n_[2], cplx(0, 0));
}

GridFunction GridFunction::line(int n, double extent) { return GridFunction(1, {n, 1, 1}, {extent, 1, 1}); }

GridFunction GridFunction::plane(int n0, int n1, double extent0, double extent1)
{
    return GridFunction(2, {n0, n1, 1}, {extent0, extent1, 1});
}

GridFunction GridFunction::cube(int n, double extent) { return GridFunction(3, {n, n, n}, {extent, extent, extent}); }

double GridFunction::cell_volume() const
{
    double v = 1;
    for (int a = 0; a < dim_; ++a)
        v *= dx(a);
    return v;
}

double GridFunction::wavenumber(int axis, int k) const
{
    int n = n_[axis];
    int kk = k < n / 2 ? k : k - n;
    return 2.0 * M_PI * kk / L_[axis];
}

double GridFunction::nyquist(int axis) const { return M_PI / dx(axis); }

std::array<int, 3> GridFunction::unflatten(std::size_t idx) const
{
    int k = static_cast<int>(idx % n_[2]);
    idx /= n_[2];
    int j = static_cast<int>(idx % n_[1]);
    int i = static_cast<int>(idx / n_[1]);
    return {i, j, k};
}

Coord GridFunction::point(std::size_t idx) const
{
    auto ijk = unflatten(idx);
    Coord c{0, 0, 0};
    for (int a = 0; a < dim_; ++a)
        c[a] = coord(a, ijk[a]);
    return c;
}

Coord GridFunction::frequency(std::size_t idx) const
{
    auto ijk = unflatten(idx);
    Coord c{0, 0, 0};
    for (int a = 0; a < dim_; ++a)
        c[a] = wavenumber(a, ijk[a]);
    return c;
}

void GridFunction::fill(const std::function<cplx(const Coord&)>& fn)
{
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] = fn(point(i));
}

bool GridFunction::same_shape(const GridFunction& o) const
{
    return dim_ == o.dim_ && n_ == o.n_ && L_ == o.L_;
}

double GridFunction::l2_norm() const
{
    double s = 0;
    for (const auto& v : data_)
        s += std::norm(v);
    return std::sqrt(s * cell_volume());
}

double GridFunction::max_abs() const
{
    double m = 0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& o)
{
    if (!same_shape(o))
        throw InvalidArgument("GridFunction: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o)
{
    if (!same_shape(o))
        throw InvalidArgument("GridFunction: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(cplx s)
{
    for (auto& v : data_)
        v *= s;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }

static void run_dft(GridFunction& f, int sign)
{
    int dims[3] = {f.n(0), f.n(1), f.n(2)};
    auto* p = reinterpret_cast<fftw_complex*>(f.values().data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft(f.dim(), dims, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!plan)
        throw Error("FFTW plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
}

void dft_forward(GridFunction& f) { run_dft(f, FFTW_FORWARD); }

void dft_inverse(GridFunction& f)
{
    run_dft(f, FFTW_BACKWARD);
    f *= 1.0 / static_cast<double>(f.size());
}

double rel_l2(const GridFunction& a, const GridFunction& b)
{
    if (!a.same_shape(b))
        throw InvalidArgument("rel_l2: shape mismatch");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    if (den == 0)
        return num == 0 ? 0.0 : INFINITY;
    return std::sqrt(num / den);
}

double high_band_fraction(const GridFunction& f)
{
    GridFunction s = f;
    dft_forward(s);
    double hi = 0, tot = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double e = std::norm(s[i]);
        tot += e;
        Coord k = s.frequency(i);
        for (int a = 0; a < s.dim(); ++a) {
            if (std::abs(k[a]) > 0.5 * s.nyquist(a)) {
                hi += e;
                break;
            }
        }
    }
    return tot > 0 ? hi / tot : 0.0;
}

double edge_fraction(const GridFunction& f)
{
    double m = f.max_abs();
    if (m == 0)
        return 0;
    double e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto ijk = f.unflatten(i);
        for (int a = 0; a < f.dim(); ++a) {
            if (ijk[a] == 0 || ijk[a] == f.n(a) - 1) {
                e = std::max(e, std::abs(f[i]));
                break;
            }
        }
    }
    return e / m;
}

std::vector<double> dst1(const std::vector<double>& x)
{
    std::vector<double> in = x, out(x.size());
    if (x.empty())
        return out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_r2r_1d(static_cast<int>(x.size()), in.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
    return out;
}

bool inside_box(const GridFunction& f, const Coord& x)
{
    for (int a = 0; a < f.dim(); ++a) {
        double lo = f.coord(a, 0), hi = f.coord(a, f.n(a) - 1);
        if (!(x[a] >= lo && x[a] <= hi))
            return false;
    }
    return true;
}

cplx sample_cubic(const GridFunction& f, const Coord& x)
{
    std::array<std::array<double, 4>, 3> w{};
    std::array<int, 3> base{0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        if (a >= f.dim()) {
            w[a] = {0, 1, 0, 0};
            base[a] = -1;
            continue;
        }
        double u = (x[a] - f.coord(a, 0)) / f.dx(a);
        double i0 = std::floor(u);
        double t = u - i0;
        base[a] = static_cast<int>(i0) - 1;
        w[a] = {-t * (t - 1) * (t - 2) / 6, (t + 1) * (t - 1) * (t - 2) / 2, -(t + 1) * t * (t - 2) / 2,
                (t + 1) * t * (t - 1) / 6};
    }
    cplx acc = 0;
    for (int i = 0; i < 4; ++i) {
        if (w[0][i] == 0)
            continue;
        int ii = base[0] + i;
        if (ii < 0 || ii >= f.n(0))
            continue;
        for (int j = 0; j < 4; ++j) {
            if (w[1][j] == 0)
                continue;
            int jj = base[1] + j;
            if (jj < 0 || jj >= f.n(1))
                continue;
            for (int k = 0; k < 4; ++k) {
                if (w[2][k] == 0)
                    continue;
                int kk = base[2] + k;
                if (kk < 0 || kk >= f.n(2))
                    continue;
                acc += w[0][i] * w[1][j] * w[2][k] * f[f.index(ii, jj, kk)];
            }
        }
    }
    return acc;
}

} // namespace modflow
