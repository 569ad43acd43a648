/**
 * @file oscillate.hpp
 * @brief Oscillation of zeta'' = (k + lambda e^{(2-alpha)s}) zeta for D_c < 0 and
 *        the nonnegative source for which lambda u - L u = phi has no positive solution.
 */
#pragma once

#include "sel/params.hpp"

#include <array>
#include <vector>

namespace sel {

struct OscillationCoefficients {
    double k = 0.0;     ///< D_c
    double rate = 0.0;  ///< 2 - alpha
    double m = 0.0;     ///< k + lambda e^{rate s} <= k/2 on the side of m away from the exponential end
};

/// Requires alpha != 2, D_c < 0, lambda > 0.
OscillationCoefficients transform(const OperatorParams& params, double lambda);

/// Two solutions sampled on a uniform mesh between s_start and s_end (either order),
/// with u1 = 1, u1' = 0, u2 = 0, u2' = 1 at s_start.
struct HomogeneousPair {
    double k = 0.0, lambda = 0.0, rate = 0.0;
    std::vector<double> s, u1, du1, u2, du2;

    /// Cubic Hermite interpolation: {u1, u1', u2, u2'} at t.
    std::array<double, 4> eval(double t) const;
    /// max |u1 u2' - u1' u2 - 1| over the samples.
    double wronskian_defect() const;
};

/// Dormand-Prince 5(4) with dense output; step is the sampling interval.
HomogeneousPair integrate_pair(double k, double lambda, double rate, double s_start, double s_end,
                               double step = 0.01, double rtol = 1e-11);

/// Strict sign changes of u1 (which = 0) or u2 (which = 1), refined by bisection to 1e-8,
/// re-integrating from the nearest sample. Ordered from s_start outward.
std::vector<double> find_zeros(const HomogeneousPair& pair, int which, double tol = 1e-8);

struct OscillationRun {
    OperatorParams params;
    double lambda = 0.0;
    OscillationCoefficients coeffs;
    double s_far = 0.0;  ///< far end of the integration window
    HomogeneousPair pair;
    std::vector<double> zeros;  ///< sign changes of u1
    std::vector<double> zeros_u2;

    // counterexample; filled by build_counterexample
    bool constructed = false;
    double window_lo = 0.0, window_hi = 0.0;  ///< support of g in s
    std::vector<double> g_s, g_values;        ///< bump g >= 0 on the window
    std::vector<double> phi_r, phi_values;    ///< phi(r) = g(log r) r^{alpha-3/2}
    double witness_s = 0.0;
    double witness_value = 0.0;         ///< w(s*) = int G(s*,t) g(t) dt
    double witness_value_source = 0.0;  ///< same with the source e^{(2-alpha+s0)t} phi(e^t)

    /// G(s,t) = u1(t) u2(s) - u1(s) u2(t).
    double kernel(double s, double t) const;
};

/// Integrates from m towards the power end (default s_far = -40 for alpha < 2, +40 for alpha > 2).
OscillationRun integrate_homogeneous(const OperatorParams& params, double lambda);
OscillationRun integrate_homogeneous(const OperatorParams& params, double lambda, double s_far);

/// Places a unit-mass C^2 bump where G(m, .) = -u2 < 0, nearest to m; throws
/// NumericalFailure if no such window exists in the run.
OscillationRun build_counterexample(OscillationRun run);

}  // namespace sel
