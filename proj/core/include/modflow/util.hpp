#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "modflow/geometry.hpp"

namespace modflow {

// Uniform doubles built directly from mt19937_64 bits, so sample streams do not
// depend on the standard library's distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 20240601ULL) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal();
    std::uint64_t bits() { return eng_(); }

    FourVector four_vector(double lo, double hi)
    {
        return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    }
    // rejection sampling inside an open region's bounding box
    FourVector in_region(const Region& r, double box);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// global worker count, 0 = hardware concurrency
void set_thread_count(unsigned n);
unsigned thread_count();

// runs fn(i) for i in [0,n); callers write into per-index slots so
// reductions can be done in index order afterwards
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// maximum of |a_i - b_i|
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

} // namespace modflow
