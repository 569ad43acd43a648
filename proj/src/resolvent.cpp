#include "sel/resolvent.hpp"

#include "sel/errors.hpp"
#include "sel/specfun.hpp"
#include "sel/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace sel {

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::Green: return "Green";
        case SolveMethod::FiniteDifference: return "FiniteDifference";
        case SolveMethod::AnnulusDirichlet: return "AnnulusDirichlet";
    }
    return "?";
}

GridFunction ResolventReport::real_solution() const {
    GridFunction out{solution.grid, std::vector<double>(solution.size()), solution.N, solution.p};
    for (std::size_t i = 0; i < solution.size(); ++i) out.values[i] = solution.values[i].real();
    return out;
}

double bump(double r, double r_lo, double r_hi) {
    const double s = std::log(r), a = std::log(r_lo), b = std::log(r_hi);
    const double x = (2 * s - a - b) / (b - a);
    if (std::abs(x) >= 1) return 0.0;
    const double t = 1 - x * x;
    return t * t * t * t;
}

namespace {

void check_lambda(std::complex<double> lambda) {
    if (!(lambda.real() > 0.0) || !std::isfinite(std::abs(lambda)))
        throw InvalidInput("resolvent: need Re lambda > 0");
}

double discriminant_checked(const OperatorParams& params, double re_lambda) {
    params.validate();
    const double D = spectral_summary(params).discriminant;
    if (params.alpha == 2.0) {
        if (!(D + re_lambda > 0.0)) throw InvalidInput("resolvent: alpha = 2 needs D_c + Re lambda > 0");
    } else if (D < 0.0) {
        throw InvalidInput("resolvent: D_c < 0 (no positive kernel)");
    }
    return D;
}

void fill_norms(ResolventReport& rep, const OperatorParams& params, const std::vector<double>& thetas) {
    const double p = rep.solution.p;
    rep.norm_p = lp_norm(rep.solution, p);
    for (double th : thetas) rep.weighted_norms.emplace_back(th, lp_norm(rep.solution, p, th * (params.alpha - 2)));
}

// Increment of a cumulative integral over [s_j, s_{j+1}] from the cubic through
// four neighbouring nodes; y(k) returns the integrand at node k.
template <class Y>
double cell_integral(std::size_t j, std::size_t n, double h, Y&& y) {
    if (j == 0) return h * (9 * y(0) + 19 * y(1) - 5 * y(2) + y(3)) / 24;
    if (j + 2 == n) return h * (y(n - 4) - 5 * y(n - 3) + 19 * y(n - 2) + 9 * y(n - 1)) / 24;
    return h * (-y(j - 1) + 13 * y(j) + 13 * y(j + 1) - y(j + 2)) / 24;
}

}  // namespace

ResolventReport green_solve(const OperatorParams& params, double lambda, const GridFunction& f,
                            const std::vector<double>& thetas) {
    check_lambda(lambda);
    const double D = discriminant_checked(params, lambda);
    const LogGrid& g = f.grid;
    const std::size_t n = f.size();
    if (n < 5) throw InvalidInput("green_solve: need at least 5 nodes");
    const double a = 2.0 - params.alpha;
    const double s0 = params.s0();
    const double h = g.h();

    // v_L = e^{zeta} Lt, v_R = e^{-zeta} Rt, Wronskian v_L' v_R - v_L v_R' = 1/C
    std::vector<double> zeta(n), Lt(n), Rt(n), F(n);
    double C;
    if (a == 0.0) {
        const double mu = std::sqrt(D + lambda);
        C = 1.0 / (2.0 * mu);
        for (std::size_t i = 0; i < n; ++i) {
            zeta[i] = mu * g.s(i);
            Lt[i] = Rt[i] = 1.0;
        }
    } else {
        const double nu = 2.0 / std::abs(a) * std::sqrt(D);
        const double A = 2.0 / std::abs(a) * std::sqrt(lambda);
        C = 2.0 / std::abs(a);
        for (std::size_t i = 0; i < n; ++i) {
            const double z = A * std::exp(0.5 * a * g.s(i));
            const BesselEval e = bessel_eval_scaled(nu, z);
            if (a > 0) {
                zeta[i] = z;
                Lt[i] = e.value_i;
                Rt[i] = e.value_k;
            } else {
                zeta[i] = -z;
                Lt[i] = e.value_k;
                Rt[i] = e.value_i;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) F[i] = std::exp((s0 + a) * g.s(i)) * f.values[i];

    std::vector<double> JL(n, 0.0), JR(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double z1 = zeta[j + 1];
        const double inc = cell_integral(j, n, h, [&](std::size_t k) {
            return F[k] == 0.0 ? 0.0 : std::exp(zeta[k] - z1) * Lt[k] * F[k];
        });
        JL[j + 1] = std::exp(zeta[j] - z1) * JL[j] + inc;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        const double z0 = zeta[j];
        const double inc = cell_integral(j, n, h, [&](std::size_t k) {
            return F[k] == 0.0 ? 0.0 : std::exp(z0 - zeta[k]) * Rt[k] * F[k];
        });
        JR[j] = std::exp(z0 - zeta[j + 1]) * JR[j + 1] + inc;
    }

    ResolventReport rep;
    rep.lambda = lambda;
    rep.method = SolveMethod::Green;
    rep.solution = ComplexGridFunction{g, std::vector<std::complex<double>>(n), f.N, f.p};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = C * std::exp(-s0 * g.s(i)) * (Rt[i] * JL[i] + Lt[i] * JR[i]);
        if (!std::isfinite(u)) throw NumericalFailure("green_solve: overflow in the kernel quadrature");
        rep.solution.values[i] = u;
    }
    fill_norms(rep, params, thetas);
    return rep;
}

namespace {

using cd = std::complex<double>;

// v'/v of the decaying branches at the two grid ends.
std::pair<cd, cd> robin_data(const OperatorParams& params, cd lambda, double D, double s_left, double s_right) {
    const double a = 2.0 - params.alpha;
    if (a == 0.0) {
        const cd mu = std::sqrt(D + lambda);
        return {mu, -mu};
    }
    if (lambda.imag() == 0.0) {
        const double lam = lambda.real();
        const double nu = 2.0 / std::abs(a) * std::sqrt(D);
        const double A = 2.0 / std::abs(a) * std::sqrt(lam);
        auto ratio = [&](double s, bool use_i) {
            const double z = A * std::exp(0.5 * a * s);
            const BesselEval e = bessel_eval_scaled(nu, z);
            return 0.5 * a * z * (use_i ? e.deriv_i / e.value_i : e.deriv_k / e.value_k);
        };
        // alpha < 2: v_L = I, v_R = K; alpha > 2: v_L = K, v_R = I
        return {ratio(s_left, a > 0), ratio(s_right, a < 0)};
    }
    const cd sl = std::sqrt(lambda);
    const double sg = a > 0 ? 1.0 : -1.0;
    auto exp_end = [&](double s) { return -a / 4.0 - sg * sl * std::exp(0.5 * a * s); };
    const double root = std::sqrt(D);
    if (a > 0) return {cd(root), exp_end(s_right)};
    return {exp_end(s_left), cd(-root)};
}

}  // namespace

ResolventReport fd_solve(const OperatorParams& params, std::complex<double> lambda, const GridFunction& f,
                         BoundaryMode bc, const std::vector<double>& thetas) {
    check_lambda(lambda);
    const double D = discriminant_checked(params, lambda.real());
    const LogGrid& g = f.grid;
    const std::size_t n = f.size();
    if (n < 5) throw InvalidInput("fd_solve: need at least 5 nodes");
    const double a = 2.0 - params.alpha;
    const double s0 = params.s0();
    const double h = g.h(), ih2 = 1.0 / (h * h);

    std::size_t lo = 0, hi = n - 1;  // first and last unknown
    bool dirichlet = bc.kind == BoundaryMode::Kind::DirichletAnnulus;
    if (dirichlet) {
        if (!(bc.epsilon > 0.0 && bc.epsilon < 1.0)) throw InvalidInput("fd_solve: annulus needs 0 < eps < 1");
        const double se = std::log(bc.epsilon);
        if (se < g.s_min || -se > g.s_max) throw InvalidInput("fd_solve: eps and 1/eps must lie inside the grid");
        const std::size_t b_lo = g.nearest(se), b_hi = g.nearest(-se);
        if (b_hi < b_lo + 2) throw InvalidInput("fd_solve: annulus narrower than two cells");
        lo = b_lo + 1;
        hi = b_hi - 1;
    }
    const std::size_t m = hi - lo + 1;
    Tridiagonal<cd> T(m);
    std::vector<cd> rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = lo + k;
        const double s = g.s(i);
        const cd Q = D + lambda * std::exp(a * s);
        T.diag[k] = 2.0 * ih2 + Q;
        T.lower[k] = T.upper[k] = -ih2;
        rhs[k] = std::exp((s0 + a) * s) * f.values[i];
    }
    if (!dirichlet) {
        const auto [bl, br] = robin_data(params, lambda, D, g.s_min, g.s_max);
        T.diag[0] += 2.0 * bl / h;
        T.upper[0] = -2.0 * ih2;
        T.diag[m - 1] -= 2.0 * br / h;
        T.lower[m - 1] = -2.0 * ih2;
    }
    std::vector<cd> v = solve(T, std::move(rhs));

    ResolventReport rep;
    rep.lambda = lambda;
    rep.method = dirichlet ? SolveMethod::AnnulusDirichlet : SolveMethod::FiniteDifference;
    rep.solution = ComplexGridFunction{g, std::vector<cd>(n, cd(0.0)), f.N, f.p};
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = lo + k;
        const cd u = std::exp(-s0 * g.s(i)) * v[k];
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
            throw NumericalFailure("fd_solve: non-finite solution");
        rep.solution.values[i] = u;
    }
    fill_norms(rep, params, thetas);
    return rep;
}

double relative_lp_gap(const ComplexGridFunction& a, const ComplexGridFunction& b, double p) {
    if (a.size() != b.size()) throw InvalidInput("relative_lp_gap: grid mismatch");
    ComplexGridFunction d = a;
    for (std::size_t i = 0; i < d.size(); ++i) d.values[i] -= b.values[i];
    const double nb = lp_norm(b, p), nd = lp_norm(d, p);
    if (nb == 0.0) return nd == 0.0 ? 0.0 : INFINITY;
    return nd / nb;
}

ResolventReport cross_check(const OperatorParams& params, double lambda, const GridFunction& f,
                            const std::vector<double>& thetas) {
    ResolventReport green = green_solve(params, lambda, f);
    ResolventReport fd = fd_solve(params, lambda, f, BoundaryMode::decaying(), thetas);
    fd.discrepancy = relative_lp_gap(fd.solution, green.solution, f.p);
    return fd;
}

DecayProbe decay_probe(const OperatorParams& params, double p, double theta, const std::vector<double>& lambdas,
                       const std::function<double(double)>& g, std::optional<LogGrid> grid) {
    if (lambdas.size() < 2) throw InvalidInput("decay_probe: need at least two lambdas");
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidInput("decay_probe: theta must lie in [0,1]");
    if (theta > 0.0 && params.alpha != 2.0) {
        const ThetaData td = theta_data(params, p);
        const bool ok = (td.interval && td.interval->contains(theta)) || (td.theta0 && *td.theta0 == theta);
        if (!ok) throw InvalidInput("decay_probe: theta not in I");
    }
    const LogGrid grd = grid ? *grid : LogGrid::default_for(params.alpha);
    auto profile = g ? g : std::function<double(double)>([](double r) { return bump(r, 1.0, 2.0); });
    const double a = 2.0 - params.alpha;

    DecayProbe out;
    out.theta = theta;
    out.lambdas = lambdas;
    out.target = -(1.0 - theta);
    std::vector<double> x, y;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw InvalidInput("decay_probe: lambdas must be > 0");
        const double t = a == 0.0 ? 1.0 : std::pow(lam, 1.0 / a);
        GridFunction f = sample(grd, [&](double r) { return profile(t * r); }, params.N, p);
        const double nf = lp_norm(f, p);
        if (nf == 0.0) throw InvalidInput("decay_probe: data vanish on the grid");
        ResolventReport rep = fd_solve(params, lam, f, BoundaryMode::decaying(), {theta});
        const double ratio = rep.weighted_norms.front().second / nf;
        out.ratios.push_back(ratio);
        x.push_back(std::log(lam));
        y.push_back(std::log(ratio));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw InvalidInput("decay_probe: lambdas must not all coincide");
    out.slope = sxy / sxx;
    out.within_bound = out.slope <= out.target + 0.05;
    return out;
}

MinimalityReport minimality_check(const OperatorParams& params, double p, double lambda, const GridFunction& f,
                                  const std::vector<double>& epsilons) {
    if (!classify(params, p).generates) throw InvalidInput("minimality_check: no generation at (params, p)");
    for (double v : f.values)
        if (v < 0.0) throw InvalidInput("minimality_check: f must be >= 0");
    for (std::size_t k = 1; k < epsilons.size(); ++k)
        if (!(epsilons[k] < epsilons[k - 1])) throw InvalidInput("minimality_check: eps list must decrease");

    GridFunction data = f;
    data.p = p;
    const ResolventReport ref = fd_solve(params, lambda, data);
    MinimalityReport out;
    out.epsilons = epsilons;
    std::vector<double> prev;
    for (double eps : epsilons) {
        const ResolventReport rep = fd_solve(params, lambda, data, BoundaryMode::annulus(eps));
        const GridFunction u = rep.real_solution();
        if (!prev.empty())
            for (std::size_t i = 0; i < u.size(); ++i) out.max_decrease = std::max(out.max_decrease, prev[i] - u.values[i]);
        prev = u.values;
        out.gaps.push_back(relative_lp_gap(rep.solution, ref.solution, p));
    }
    out.monotone = out.max_decrease <= 1e-10;
    out.converged = !out.gaps.empty() && out.gaps.back() <= 1e-4;
    return out;
}

}  // namespace sel
