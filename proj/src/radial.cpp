#include "sel/radial.hpp"

#include "sel/errors.hpp"
#include "sel/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace sel {

RadialSolutionPair::RadialSolutionPair(const OperatorParams& params, double lambda)
    : params_(params), lambda_(lambda) {
    params.validate();
    if (params.alpha == 2.0) throw InvalidInput("radial: alpha = 2 has pure power solutions");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("radial: lambda must be > 0");
    const double D = spectral_summary(params).discriminant;
    if (D < 0.0) throw InvalidInput("radial: D_c < 0 (oscillatory regime)");
    a_ = 2.0 - params.alpha;
    scale_ = 2.0 / std::abs(a_) * std::sqrt(lambda);
    nu_ = 2.0 / std::abs(a_) * std::sqrt(D);
}

double RadialSolutionPair::scaling_constant() const {
    return std::pow(a_ * a_ / (4.0 * lambda_), 1.0 / a_);
}

double RadialSolutionPair::argument(double r) const { return scale_ * std::pow(r, 0.5 * a_); }

ScaledBranch RadialSolutionPair::eval_scaled(Branch b, double s) const {
    const double z = scale_ * std::exp(0.5 * a_ * s);
    const double s0 = params_.s0();
    const double pre = std::exp(-s0 * s);
    const BesselEval e = bessel_eval_scaled(nu_, z);
    const double dz = 0.5 * a_ * z;
    ScaledBranch out;
    if (b == Branch::U1) {
        out.value = pre * e.value_i;
        out.deriv_s = pre * (-s0 * e.value_i + dz * e.deriv_i);
        out.zeta = z;
    } else {
        out.value = pre * e.value_k;
        out.deriv_s = pre * (-s0 * e.value_k + dz * e.deriv_k);
        out.zeta = -z;
    }
    return out;
}

namespace {

double unscale(double v, double zeta) {
    const double out = v * std::exp(zeta);
    if (!std::isfinite(out)) throw NumericalFailure("radial: value overflows; use eval_scaled");
    return out;
}

}  // namespace

double RadialSolutionPair::u(Branch b, double r) const {
    if (!(r > 0.0)) throw InvalidInput("radial: r must be > 0");
    const ScaledBranch e = eval_scaled(b, std::log(r));
    return unscale(e.value, e.zeta);
}

double RadialSolutionPair::du(Branch b, double r) const {
    if (!(r > 0.0)) throw InvalidInput("radial: r must be > 0");
    const ScaledBranch e = eval_scaled(b, std::log(r));
    return unscale(e.deriv_s, e.zeta) / r;
}

double RadialSolutionPair::wronskian(double r) const {
    const double s = std::log(r);
    const ScaledBranch e1 = eval_scaled(Branch::U1, s), e2 = eval_scaled(Branch::U2, s);
    return (e1.value * e2.deriv_s - e1.deriv_s * e2.value) / r;
}

double RadialSolutionPair::ode_residual(Branch b, double r) const {
    const double s = std::log(r);
    const ScaledBranch c = eval_scaled(b, s);
    const double dz = std::abs(0.5 * a_ * argument(r));
    const double delta = 1e-4 / std::max(1.0, dz);
    const ScaledBranch hi = eval_scaled(b, s + delta), lo = eval_scaled(b, s - delta);
    const double d_hi = hi.deriv_s * std::exp(hi.zeta - c.zeta);
    const double d_lo = lo.deriv_s * std::exp(lo.zeta - c.zeta);
    const double u_ss = (d_hi - d_lo) / (2.0 * delta);
    const double kappa = params_.N - 2 + params_.c;
    const double w = std::exp(-a_ * s);
    const double res = lambda_ * c.value - w * (u_ss + kappa * c.deriv_s - params_.b * c.value);
    const double scale = lambda_ * std::abs(c.value) +
                         w * (std::abs(u_ss) + std::abs(kappa * c.deriv_s) + std::abs(params_.b * c.value));
    return scale == 0.0 ? 0.0 : std::abs(res) / scale;
}

RadialSolutionPair build_pair(const OperatorParams& params, double lambda) { return {params, lambda}; }

std::vector<AsymptoticDescriptor> asymptotics(const RadialSolutionPair& pair) {
    const OperatorParams& p = pair.params();
    const SpectralSummary sp = spectral_summary(p);
    const double a = 2.0 - p.alpha;
    const double rate = 2.0 / std::abs(a) * std::sqrt(pair.lambda());
    const double exp_power = -sp.s0 - a / 4.0;
    const bool critical = sp.kind == RootKind::Double;

    using D = AsymptoticDescriptor;
    const D u1_exp{Branch::U1, Region::NearInfinity, exp_power, false, rate};
    const D u2_exp{Branch::U2, Region::NearInfinity, exp_power, false, -rate};
    if (a > 0) {
        return {
            D{Branch::U1, Region::NearZero, -sp.s1, false, 0.0},
            u1_exp,
            critical ? D{Branch::U2, Region::NearZero, -sp.s0, true, 0.0}
                     : D{Branch::U2, Region::NearZero, -sp.s2, false, 0.0},
            u2_exp,
        };
    }
    return {
        D{Branch::U1, Region::NearZero, exp_power, false, rate},
        D{Branch::U1, Region::NearInfinity, -sp.s2, false, 0.0},
        D{Branch::U2, Region::NearZero, exp_power, false, -rate},
        critical ? D{Branch::U2, Region::NearInfinity, -sp.s0, true, 0.0}
                 : D{Branch::U2, Region::NearInfinity, -sp.s1, false, 0.0},
    };
}

bool weighted_lp_membership(const AsymptoticDescriptor& desc, int N, double p, double weight_power,
                            double log_power) {
    if (!(p >= 1.0)) throw InvalidInput("membership: p must be >= 1");
    if (desc.exp_rate > 0.0) return false;
    if (desc.exp_rate < 0.0) return true;
    const double e = p * (weight_power + desc.power_exponent) + N - 1;
    const double tol = 1e-12 * std::max(1.0, std::abs(e));
    if (std::abs(e + 1.0) > tol) return desc.region == Region::NearZero ? e > -1.0 : e < -1.0;
    const double sigma = p * (log_power + (desc.log_factor ? 1.0 : 0.0));
    return sigma < -1.0;
}

GridFunction apply_operator(const OperatorParams& params, const GridFunction& g) {
    const std::size_t n = g.size();
    if (n < 5) throw InvalidInput("apply_operator: need at least 5 nodes");
    const double h = g.grid.h();
    const double kappa = params.N - 2 + params.c;
    GridFunction out{g.grid.slice(2, n - 4), std::vector<double>(n - 4), g.N, g.p};
    const auto& v = g.values;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double gs = (-v[i + 2] + 8 * v[i + 1] - 8 * v[i - 1] + v[i - 2]) / (12 * h);
        const double gss = (-v[i + 2] + 16 * v[i + 1] - 30 * v[i] + 16 * v[i - 1] - v[i - 2]) / (12 * h * h);
        out.values[i - 2] = std::exp((params.alpha - 2) * g.s(i)) * (gss + kappa * gs - params.b * v[i]);
    }
    return out;
}

}  // namespace sel
