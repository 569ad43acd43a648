/**
 * @file grid.hpp
 * @brief Uniform grids in s = log r, grid functions, and radial L^p norms.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace sel {

struct LogGrid {
    double s_min = -12.0;
    double s_max = 8.0;
    std::size_t n = 4000;

    /// Throws InvalidInput unless n >= 5 and s_min < s_max.
    static LogGrid make(double s_min, double s_max, std::size_t n);
    /// [-12/|2-alpha|, 8/|2-alpha|], or [-12, 8] when alpha = 2.
    static LogGrid default_for(double alpha, std::size_t n = 4000);

    double h() const { return (s_max - s_min) / static_cast<double>(n - 1); }
    double s(std::size_t i) const { return s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(n - 1); }
    double r(std::size_t i) const { return std::exp(s(i)); }
    std::size_t size() const { return n; }
    std::size_t nearest(double s_value) const;
    LogGrid slice(std::size_t first, std::size_t count) const;
};

template <class T>
struct RadialGridFunction {
    LogGrid grid;
    std::vector<T> values;
    int N = 3;
    double p = 2.0;

    std::size_t size() const { return values.size(); }
    double s(std::size_t i) const { return grid.s(i); }
    double r(std::size_t i) const { return grid.r(i); }
};

using GridFunction = RadialGridFunction<double>;
using ComplexGridFunction = RadialGridFunction<std::complex<double>>;

template <class F>
GridFunction sample(const LogGrid& grid, F&& fn_of_r, int N = 3, double p = 2.0) {
    GridFunction g{grid, std::vector<double>(grid.n), N, p};
    for (std::size_t i = 0; i < grid.n; ++i) g.values[i] = fn_of_r(grid.r(i));
    return g;
}

/// Surface measure of the unit sphere in R^N; 1 for N = 1 (half-line convention).
double sphere_measure(int N);

/// Composite Simpson on a uniform grid; a 3/8 panel closes an odd interval count.
double simpson(const std::vector<double>& y, double h);

/// (omega_{N-1} int_0^inf |r^w u|^p r^{N-1} dr)^{1/p}, integrated in s.
double lp_norm(const GridFunction& u, double p, double weight_power = 0.0);
double lp_norm(const ComplexGridFunction& u, double p, double weight_power = 0.0);

/// Pointwise |.| of the values as a real function on the same grid.
GridFunction abs_values(const ComplexGridFunction& u);
ComplexGridFunction to_complex(const GridFunction& u);

}  // namespace sel
