/**
 * @file evolve.hpp
 * @brief Radial time stepping of u_t = L u on the log grid.
 *
 * The step works on v = r^{s0} u, for which v_t = e^{(alpha-2)s}(v_ss - D_c v),
 * discretised with the same three-point stencil as fd_solve and homogeneous
 * Dirichlet values at the two grid ends.
 */
#pragma once

#include "sel/grid.hpp"
#include "sel/params.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sel {

enum class TimeScheme { ImplicitEuler, CrankNicolson };
std::string to_string(TimeScheme s);
std::optional<TimeScheme> parse_time_scheme(const std::string& s);

struct EvolveOptions {
    bool require_generation = true;  ///< reject (params, p) outside the generation range
    bool assert_positive = true;     ///< implicit Euler only; throws if a minimum drops below -1e-12
    double bound_tol = 0.05;         ///< slack on the alpha = 2 norm bound
    std::size_t record_every = 1;    ///< history stride in steps
};

struct EvolutionRun {
    OperatorParams params;
    double p = 2.0, dt = 0.0, T = 0.0;
    TimeScheme scheme = TimeScheme::ImplicitEuler;
    GridFunction initial, final_state;
    std::vector<double> times, norm_history, min_history;
    std::optional<double> bound_exponent;  ///< alpha = 2: -f(N/p)
    double worst_bound_ratio = 0.0;        ///< max ||u(t)|| / (e^{exponent t} ||u(0)||)
    bool bound_ok = true;
    bool positive = true;  ///< min_history >= -1e-12
};

/// T is rounded to a whole number of steps.
EvolutionRun evolve(const OperatorParams& params, double p, const GridFunction& initial, double dt, double T,
                    TimeScheme scheme = TimeScheme::ImplicitEuler, const EvolveOptions& opts = {});

/// The discrete generator: L_h u at interior nodes, 0 at the ends.
GridFunction apply_generator(const OperatorParams& params, const GridFunction& u);

/// (t, t ||L_h u(t)||_p) at the requested times (implicit Euler with step dt).
std::vector<std::pair<double, double>> smoothing_probe(const OperatorParams& params, double p,
                                                       const GridFunction& initial, double dt,
                                                       const std::vector<double>& times);

}  // namespace sel
