#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace modflow {

using cplx = std::complex<double>;
using Coord = std::array<double, 3>;

// Uniform samples on the box [-L/2, L/2)^d, d in {1,2,3}, N a power of two per axis.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(int dim, std::array<int, 3> n, std::array<double, 3> extent);

    static GridFunction line(int n, double extent);
    static GridFunction plane(int n0, int n1, double extent0, double extent1);
    static GridFunction cube(int n, double extent);

    int dim() const { return dim_; }
    int n(int axis) const { return n_[axis]; }
    double extent(int axis) const { return L_[axis]; }
    double dx(int axis) const { return L_[axis] / n_[axis]; }
    double cell_volume() const;
    std::size_t size() const { return data_.size(); }

    double coord(int axis, int i) const { return -0.5 * L_[axis] + i * dx(axis); }
    // angular wavenumber of DFT bin k (FFT ordering)
    double wavenumber(int axis, int k) const;
    double nyquist(int axis) const;

    std::size_t index(int i, int j = 0, int k = 0) const
    {
        return (static_cast<std::size_t>(i) * n_[1] + j) * n_[2] + k;
    }
    std::array<int, 3> unflatten(std::size_t idx) const;
    Coord point(std::size_t idx) const;
    Coord frequency(std::size_t idx) const;

    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    std::vector<cplx>& values() { return data_; }
    const std::vector<cplx>& values() const { return data_; }

    void fill(const std::function<cplx(const Coord&)>& fn);
    bool same_shape(const GridFunction& o) const;

    double l2_norm() const;  // (sum |f|^2 dV)^{1/2}
    double max_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(cplx s);

private:
    int dim_ = 1;
    std::array<int, 3> n_{1, 1, 1};
    std::array<double, 3> L_{1, 1, 1};
    std::vector<cplx> data_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);

// unnormalized forward DFT (sign -1) and normalized inverse, in place
void dft_forward(GridFunction& f);
void dft_inverse(GridFunction& f);

// relative L2 difference ||a-b|| / ||b||
double rel_l2(const GridFunction& a, const GridFunction& b);

// fraction of spectral energy above half the Nyquist frequency on any axis
double high_band_fraction(const GridFunction& f);
// largest |f| on the outermost grid layer relative to max |f|
double edge_fraction(const GridFunction& f);

// DST-I of length n via FFTW RODFT00: y_k = 2 sum_j x_j sin(pi (j+1)(k+1)/(n+1))
std::vector<double> dst1(const std::vector<double>& x);

bool is_power_of_two(int n);

// true if x lies in the sampled box on every used axis
bool inside_box(const GridFunction& f, const Coord& x);
// 4-point Lagrange interpolation per used axis; stencil nodes off the grid count as zero
cplx sample_cubic(const GridFunction& f, const Coord& x);

} // namespace modflow
