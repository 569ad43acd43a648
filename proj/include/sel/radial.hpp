/**
 * @file radial.hpp
 * @brief Positive radial solutions of lambda u - L u = 0 and their asymptotics.
 *
 * u1(r) = r^{-s0} I_nu(z), u2(r) = r^{-s0} K_nu(z) with
 * z = (2/|2-alpha|) sqrt(lambda) r^{(2-alpha)/2} and nu = (2/|2-alpha|) sqrt(D_c).
 */
#pragma once

#include "sel/grid.hpp"
#include "sel/params.hpp"

#include <vector>

namespace sel {

enum class Branch { U1, U2 };
enum class Region { NearZero, NearInfinity };

struct AsymptoticDescriptor {
    Branch branch = Branch::U1;
    Region region = Region::NearZero;
    double power_exponent = 0.0;
    bool log_factor = false;
    double exp_rate = 0.0;  ///< u ~ r^power |log r|^{log} exp(exp_rate r^{(2-alpha)/2})
};

/// u and r u'(r) multiplied by e^{-zeta}; the true values are value*e^{zeta}.
struct ScaledBranch {
    double value = 0.0;
    double deriv_s = 0.0;
    double zeta = 0.0;  ///< +z for U1, -z for U2
};

class RadialSolutionPair {
public:
    /// Requires alpha != 2, D_c >= 0, lambda > 0 (InvalidInput otherwise).
    RadialSolutionPair(const OperatorParams& params, double lambda);

    const OperatorParams& params() const { return params_; }
    double lambda() const { return lambda_; }
    double nu() const { return nu_; }
    double gamma() const { return 2.0 / (2.0 - params_.alpha); }
    /// ((2-alpha)^2 / (4 lambda))^{1/(2-alpha)}
    double scaling_constant() const;
    /// Bessel argument z(r).
    double argument(double r) const;

    double u(Branch b, double r) const;
    double du(Branch b, double r) const;  ///< d/dr
    double u1(double r) const { return u(Branch::U1, r); }
    double u2(double r) const { return u(Branch::U2, r); }

    /// Overflow-safe evaluation at s = log r.
    ScaledBranch eval_scaled(Branch b, double s) const;

    /// u1 u2' - u1' u2 (analytically -((2-alpha)/2) r^{-(N-1+c)}).
    double wronskian(double r) const;

    /// |lambda u - L u| divided by lambda|u| + r^{alpha-2}(|u_ss| + |kappa u_s| + |b u|),
    /// with u_ss from a centred difference of the exact u_s.
    double ode_residual(Branch b, double r) const;

private:
    OperatorParams params_;
    double lambda_;
    double a_;      // 2 - alpha
    double scale_;  // (2/|a|) sqrt(lambda)
    double nu_;
};

RadialSolutionPair build_pair(const OperatorParams& params, double lambda);

/// Four descriptors, ordered (U1, 0), (U1, inf), (U2, 0), (U2, inf).
std::vector<AsymptoticDescriptor> asymptotics(const RadialSolutionPair& pair);

/// Whether r^w |log r|^sigma u(r) is in L^p(r^{N-1} dr) on the descriptor's region.
bool weighted_lp_membership(const AsymptoticDescriptor& desc, int N, double p, double weight_power,
                            double log_power);

/// r^alpha (g'' + (N-1+c) g'/r - b g/r^2) on nodes 2..n-3 (five-point stencils in s).
GridFunction apply_operator(const OperatorParams& params, const GridFunction& g);

}  // namespace sel
