/**
 * @file forms.hpp
 * @brief Quadrature checks of the weighted form inequalities behind generation.
 *
 * Test functions are separable, u = g(r) Q(omega) with Q a spherical harmonic of
 * order n normalised so that int |Q|^p = |S^{N-1}|. The harmonic enters only
 * through lambda_n = n(n+N-2), which shifts b to b + lambda_n.
 */
#pragma once

#include "sel/grid.hpp"
#include "sel/params.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sel {

struct TestFunction {
    LogGrid grid;
    std::vector<std::complex<double>> g;  ///< radial profile; zero on the first and last two nodes
    int n = 0;
    double p = 2.0;

    /// Samples fn(s) on [s_lo, s_hi]; the two end nodes on each side are forced to zero.
    static TestFunction make(double s_lo, double s_hi, std::size_t nodes,
                             const std::function<std::complex<double>(double)>& fn, int n = 0, double p = 2.0);
    void validate() const;
};

double harmonic_eigenvalue(int N, int n);  ///< n(n+N-2)

struct FormReport {
    double real_part = 0.0;
    double imaginary_part = 0.0;
    double lower_bound = 0.0;  ///< margin_used * (weighted p-th power)
    double margin_used = 0.0;  ///< f(.) with b replaced by b + lambda_n
    bool passed = false;       ///< real_part >= lower_bound - 1e-8 * scale
    double scale = 0.0;        ///< sum of the magnitudes of the identity terms
    double identity_residual = 0.0;  ///< |direct quadrature - gradient identity| / scale
    std::optional<double> l_alpha;   ///< sectoriality constant when defined
    bool imag_bound_ok = true;       ///< |Im| <= l_alpha Re + 1e-8 scale
    double regularization_gap = 0.0; ///< p >= 2 only: |regularised - raw| / scale
};

/// Re and Im of int (-Lu) conj(u) |u|^{p-2} dx; lower bound f((N+alpha-2)/p) int |x|^{alpha-2}|u|^p.
FormReport dissipativity_form(const OperatorParams& params, const TestFunction& tf);

/// Re int (-Lu) V^{p-1} conj(u) |u|^{p-2} >= M ||V u||_p^p with V = |x|^{alpha-2}, M = f(N/p + alpha - 2).
/// p is taken from the argument.
FormReport weighted_coercivity(const OperatorParams& params, double p, const TestFunction& tf);

/// u = r^{-(N+alpha-2)/p + delta} on a plateau |s| <= half_length with C^2 ramps of the given width.
TestFunction violation_profile(const OperatorParams& params, double p, double delta, double half_length = 20.0,
                               double ramp = 4.0, std::size_t nodes = 8001);

/// u = r^{-(N/p + alpha - 2)} on the same kind of plateau (equality case of the coercivity bound).
TestFunction coercivity_near_optimizer(const OperatorParams& params, double p, double half_length,
                                       double ramp = 4.0, std::size_t nodes = 8001);

struct ViolationSweep {
    std::vector<double> deltas;
    std::vector<FormReport> reports;
    std::optional<double> first_violation;  ///< largest delta with real_part <= -1e-3 scale
    double min_ratio = 0.0;                 ///< min real_part / scale
};

ViolationSweep violation_sweep(const OperatorParams& params, double p,
                               const std::vector<double>& deltas = {0.5, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.0});

/// Real profile v(t) with t = -log r on the unit ball, v(0) = 0; returns {v, dv/dt}.
struct RadialProfile {
    std::function<std::pair<double, double>(double)> eval;
    double t_min = 1e-12, t_max = 1e3;
};

/// int_{B1} |x|^{2-N} grad v . grad(v|v|^{p-2}) >= ((p-1)/p^2) int_{B1} |x|^{-N} |log|x||^{-2} |v|^p.
/// real_part holds the left side; margin_used = (p-1)/p^2. Integrated on a uniform grid in log t.
FormReport log_hardy(double p, const RadialProfile& v, int N = 3, std::size_t nodes = 6001);

/// v = t^{1/p} e^{-t/R} (1 - e^{-t}): the constant is approached as R grows.
RadialProfile log_hardy_near_optimizer(double p, double R);

struct InterpolationReport {
    std::vector<double> epsilons;
    std::vector<double> max_constant;               ///< per epsilon, over the corpus
    std::vector<std::vector<double>> constants;     ///< [eps][profile]
    bool bounded = false;                           ///< all constants finite
};

/// Smallest C with || |x|^{alpha-1} u' ||_p <= eps ||L u||_p + (C/eps) || |x|^{alpha-2} u ||_p for each u.
InterpolationReport interpolation_probe(const OperatorParams& params, double p, const std::vector<GridFunction>& corpus,
                                        const std::vector<double>& epsilons = {0.3, 0.1, 0.03});

/// Random smooth radial profiles (bumps with modulation) on the grid.
std::vector<GridFunction> interpolation_corpus(const LogGrid& grid, std::size_t count, std::uint64_t seed, int N,
                                               double p);

struct SuiteResult {
    std::string name;
    std::size_t draws = 0, passes = 0;
    double worst = 0.0;  ///< suite-specific worst margin (see each suite)
    std::vector<FormReport> reports;
    bool ok() const { return draws > 0 && passes == draws; }
};

/// Random complex profiles and harmonic orders 0..4; pass = passed && imag_bound_ok.
SuiteResult dissipativity_suite(const OperatorParams& params, double p, std::uint64_t seed, std::size_t count = 200);
/// Random real profiles; pass = passed with slack (real_part > lower_bound).
SuiteResult coercivity_suite(const OperatorParams& params, double p, std::uint64_t seed, std::size_t count = 20);
/// Random positive profiles vanishing at r = 1; pass = passed.
SuiteResult log_hardy_suite(double p, std::uint64_t seed, std::size_t count = 50, int N = 3);
/// Random profile g = (1-x^2)^k (1 + a sin(w s + phi)) e^{i psi(s)} on a random support;
/// real when complex_phase is false.
TestFunction random_test_function(std::mt19937_64& rng, int n, double p, bool complex_phase = true);

}  // namespace sel
