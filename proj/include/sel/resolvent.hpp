/**
 * @file resolvent.hpp
 * @brief Radial solutions of lambda u - L u = f.
 *
 * Both solvers work with v = r^{s0} u in s = log r, where the equation reads
 *   -v'' + (D_c + lambda e^{(2-alpha)s}) v = e^{s0 s} e^{(2-alpha)s} f.
 * green_solve integrates the exact kernel built from u1, u2 (or the pure
 * exponentials when alpha = 2); fd_solve uses the centred three-point scheme.
 */
#pragma once

#include "sel/grid.hpp"
#include "sel/params.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace sel {

enum class SolveMethod { Green, FiniteDifference, AnnulusDirichlet };
std::string to_string(SolveMethod m);

struct BoundaryMode {
    enum class Kind { DecayingBranch, DirichletAnnulus };
    Kind kind = Kind::DecayingBranch;
    double epsilon = 0.0;  ///< annulus eps < r < 1/eps, snapped to grid nodes

    static BoundaryMode decaying() { return {}; }
    static BoundaryMode annulus(double eps) { return {Kind::DirichletAnnulus, eps}; }
};

struct ResolventReport {
    std::complex<double> lambda;
    ComplexGridFunction solution;
    SolveMethod method = SolveMethod::FiniteDifference;
    double norm_p = 0.0;
    std::vector<std::pair<double, double>> weighted_norms;  ///< (theta, || |x|^{theta(alpha-2)} u ||_p)
    std::optional<double> discrepancy;                     ///< relative L^p gap to the other method

    GridFunction real_solution() const;
};

/// Real lambda > 0. Requires D_c >= 0 (alpha != 2) or D_c + lambda > 0 (alpha = 2).
/// Norms use p = f.p.
ResolventReport green_solve(const OperatorParams& params, double lambda, const GridFunction& f,
                            const std::vector<double>& thetas = {});

/// Re lambda > 0, D_c >= 0 (or D_c + Re lambda > 0 when alpha = 2).
ResolventReport fd_solve(const OperatorParams& params, std::complex<double> lambda, const GridFunction& f,
                         BoundaryMode bc = BoundaryMode::decaying(), const std::vector<double>& thetas = {});

/// ||a - b||_p / ||b||_p on a common grid (0 when both vanish).
double relative_lp_gap(const ComplexGridFunction& a, const ComplexGridFunction& b, double p);

/// fd_solve report with discrepancy against green_solve.
ResolventReport cross_check(const OperatorParams& params, double lambda, const GridFunction& f,
                            const std::vector<double>& thetas = {});

/// C^3 bump in s supported on r in [r_lo, r_hi]; peak 1.
double bump(double r, double r_lo, double r_hi);

struct DecayProbe {
    double theta = 0.0;
    std::vector<double> lambdas;
    std::vector<double> ratios;  ///< || |x|^{theta(alpha-2)} u || / ||f||
    double slope = 0.0;
    double target = 0.0;  ///< -(1 - theta)
    bool within_bound = false;  ///< slope <= target + 0.05
};

/// Fitted decay of the weighted resolvent norm. The data are dilated with
/// lambda, f_lambda(r) = g(lambda^{1/(2-alpha)} r), so each ratio samples the
/// operator-norm rate; g defaults to bump(., 1, 2).
DecayProbe decay_probe(const OperatorParams& params, double p, double theta, const std::vector<double>& lambdas,
                       const std::function<double(double)>& g = {}, std::optional<LogGrid> grid = std::nullopt);

struct MinimalityReport {
    std::vector<double> epsilons;
    double max_decrease = 0.0;  ///< max over eps pairs and nodes of u_{eps_prev} - u_{eps_next}
    bool monotone = false;      ///< max_decrease <= 1e-10
    std::vector<double> gaps;   ///< relative L^p gap of u_eps to the decaying solution
    bool converged = false;     ///< last gap <= 1e-4
};

MinimalityReport minimality_check(const OperatorParams& params, double p, double lambda, const GridFunction& f,
                                  const std::vector<double>& epsilons);

}  // namespace sel
