#include "sel/grid.hpp"

#include "sel/errors.hpp"

#include <algorithm>
#include <numbers>

namespace sel {

LogGrid LogGrid::make(double s_min, double s_max, std::size_t n) {
    if (!(std::isfinite(s_min) && std::isfinite(s_max) && s_min < s_max))
        throw InvalidInput("grid: need finite s_min < s_max");
    if (n < 5) throw InvalidInput("grid: need at least 5 nodes");
    return LogGrid{s_min, s_max, n};
}

LogGrid LogGrid::default_for(double alpha, std::size_t n) {
    const double a = std::abs(2.0 - alpha);
    const double scale = a == 0.0 ? 1.0 : a;
    return make(-12.0 / scale, 8.0 / scale, n);
}

std::size_t LogGrid::nearest(double s_value) const {
    const double t = std::round((s_value - s_min) / h());
    if (t <= 0) return 0;
    if (t >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::size_t>(t);
}

LogGrid LogGrid::slice(std::size_t first, std::size_t count) const {
    if (count < 5 || first + count > n) throw InvalidInput("grid: slice out of range");
    return LogGrid{s(first), s(first + count - 1), count};
}

double sphere_measure(int N) {
    if (N < 1) throw InvalidInput("sphere_measure: N must be >= 1");
    if (N == 1) return 1.0;
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

double simpson(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (y[0] + y[1]);
    if (n == 3) return h / 3.0 * (y[0] + 4 * y[1] + y[2]);
    std::size_t m = n;  // nodes handled by the 1/3 rule
    double tail = 0.0;
    if ((n - 1) % 2 == 1) {
        m = n - 3;
        tail = 3.0 * h / 8.0 * (y[n - 4] + 3 * y[n - 3] + 3 * y[n - 2] + y[n - 1]);
    }
    double acc = y[0] + y[m - 1];
    for (std::size_t i = 1; i + 1 < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * y[i];
    return h / 3.0 * acc + tail;
}

namespace {

template <class T>
double lp_norm_impl(const RadialGridFunction<T>& u, double p, double w) {
    if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must be >= 1");
    std::vector<double> y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = std::abs(u.values[i]);
        y[i] = a == 0.0 ? 0.0 : std::exp(p * (std::log(a) + w * u.s(i)) + u.N * u.s(i));
    }
    return std::pow(sphere_measure(u.N) * simpson(y, u.grid.h()), 1.0 / p);
}

}  // namespace

double lp_norm(const GridFunction& u, double p, double weight_power) { return lp_norm_impl(u, p, weight_power); }
double lp_norm(const ComplexGridFunction& u, double p, double weight_power) {
    return lp_norm_impl(u, p, weight_power);
}

GridFunction abs_values(const ComplexGridFunction& u) {
    GridFunction out{u.grid, std::vector<double>(u.size()), u.N, u.p};
    std::transform(u.values.begin(), u.values.end(), out.values.begin(),
                   [](std::complex<double> z) { return std::abs(z); });
    return out;
}

ComplexGridFunction to_complex(const GridFunction& u) {
    ComplexGridFunction out{u.grid, std::vector<std::complex<double>>(u.values.begin(), u.values.end()), u.N, u.p};
    return out;
}

}  // namespace sel
