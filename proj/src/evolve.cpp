#include "sel/evolve.hpp"

#include "sel/errors.hpp"
#include "sel/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace sel {

std::string to_string(TimeScheme s) {
    return s == TimeScheme::ImplicitEuler ? "implicit-euler" : "crank-nicolson";
}

std::optional<TimeScheme> parse_time_scheme(const std::string& s) {
    if (s == "implicit-euler" || s == "ie" || s == "ImplicitEuler") return TimeScheme::ImplicitEuler;
    if (s == "crank-nicolson" || s == "cn" || s == "CrankNicolson") return TimeScheme::CrankNicolson;
    return std::nullopt;
}

namespace {

// v_t = A v with A = e^{-as}(Delta_h - D) on the interior nodes 1..n-2.
struct Stencil {
    std::vector<double> weight;  // e^{-as} / h^2
    double D = 0.0, h2 = 1.0;

    Stencil(const OperatorParams& params, const LogGrid& g) {
        D = spectral_summary(params).discriminant;
        h2 = g.h() * g.h();
        const double a = 2.0 - params.alpha;
        weight.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) weight[i] = std::exp(-a * g.s(i));
    }

    // I - theta dt A restricted to the interior
    Tridiagonal<double> lhs(double theta_dt) const {
        const std::size_t m = weight.size() - 2;
        Tridiagonal<double> T(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double w = theta_dt * weight[k + 1];
            T.diag[k] = 1.0 + w * (2.0 / h2 + D);
            T.lower[k] = T.upper[k] = -w / h2;
        }
        return T;
    }

    double apply(const std::vector<double>& v, std::size_t i) const {
        return weight[i] * ((v[i - 1] - 2 * v[i] + v[i + 1]) / h2 - D * v[i]);
    }
};

std::vector<double> to_v(const OperatorParams& params, const GridFunction& u) {
    std::vector<double> v(u.size());
    const double s0 = params.s0();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(s0 * u.s(i)) * u.values[i];
    v.front() = v.back() = 0.0;
    return v;
}

GridFunction from_v(const OperatorParams& params, const GridFunction& like, const std::vector<double>& v) {
    GridFunction u = like;
    const double s0 = params.s0();
    for (std::size_t i = 0; i < v.size(); ++i) u.values[i] = std::exp(-s0 * u.s(i)) * v[i];
    return u;
}

double min_value(const GridFunction& u) { return *std::min_element(u.values.begin(), u.values.end()); }

}  // namespace

GridFunction apply_generator(const OperatorParams& params, const GridFunction& u) {
    params.validate();
    if (u.size() < 3) throw InvalidInput("apply_generator: need at least 3 nodes");
    const Stencil st(params, u.grid);
    const std::vector<double> v = to_v(params, u);
    std::vector<double> Av(v.size(), 0.0);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) Av[i] = st.apply(v, i);
    return from_v(params, u, Av);
}

EvolutionRun evolve(const OperatorParams& params, double p, const GridFunction& initial, double dt, double T,
                    TimeScheme scheme, const EvolveOptions& opts) {
    params.validate();
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("evolve: need 1 < p < inf");
    if (!(dt > 0.0) || !(T >= 0.0) || !std::isfinite(T)) throw InvalidInput("evolve: need dt > 0 and T >= 0");
    if (initial.size() < 5) throw InvalidInput("evolve: need at least 5 nodes");
    if (opts.record_every == 0) throw InvalidInput("evolve: record_every must be >= 1");
    if (opts.require_generation && !classify(params, p).generates)
        throw InvalidInput("evolve: (params, p) is outside the generation range");

    EvolutionRun run;
    run.params = params;
    run.p = p;
    run.dt = dt;
    run.scheme = scheme;
    run.initial = initial;
    run.initial.p = p;
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    run.T = static_cast<double>(steps) * dt;

    const Stencil st(params, initial.grid);
    const double theta = scheme == TimeScheme::ImplicitEuler ? 1.0 : 0.5;
    const Tridiagonal<double> A = st.lhs(theta * dt);
    std::vector<double> v = to_v(params, run.initial);
    const double norm0 = lp_norm(run.initial, p);
    if (params.alpha == 2.0) run.bound_exponent = -f_eval(params, params.N / p);

    auto record = [&](double t, const GridFunction& u) {
        const double nrm = lp_norm(u, p), mn = min_value(u);
        if (!std::isfinite(nrm)) throw NumericalFailure("evolve: non-finite norm");
        run.times.push_back(t);
        run.norm_history.push_back(nrm);
        run.min_history.push_back(mn);
        if (mn < -1e-12) {
            run.positive = false;
            if (opts.assert_positive && scheme == TimeScheme::ImplicitEuler)
                throw NumericalFailure("evolve: positivity lost at t = " + std::to_string(t));
        }
        if (run.bound_exponent && norm0 > 0.0) {
            const double ratio = nrm / (std::exp(*run.bound_exponent * t) * norm0);
            run.worst_bound_ratio = std::max(run.worst_bound_ratio, ratio);
            if (ratio > 1.0 + opts.bound_tol) run.bound_ok = false;
        }
    };

    record(0.0, from_v(params, run.initial, v));
    std::vector<double> rhs(v.size() - 2);
    for (std::size_t step = 1; step <= steps; ++step) {
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            const std::size_t i = k + 1;
            rhs[k] = v[i] + (theta < 1.0 ? (1.0 - theta) * dt * st.apply(v, i) : 0.0);
        }
        std::vector<double> inner = solve(A, rhs);
        std::copy(inner.begin(), inner.end(), v.begin() + 1);
        if (step % opts.record_every == 0 || step == steps)
            record(static_cast<double>(step) * dt, from_v(params, run.initial, v));
    }
    run.final_state = from_v(params, run.initial, v);
    return run;
}

std::vector<std::pair<double, double>> smoothing_probe(const OperatorParams& params, double p,
                                                       const GridFunction& initial, double dt,
                                                       const std::vector<double>& times) {
    std::vector<double> ts = times;
    std::sort(ts.begin(), ts.end());
    std::vector<std::pair<double, double>> out;
    GridFunction u = initial;
    double t = 0.0;
    for (double target : ts) {
        if (!(target > 0.0)) throw InvalidInput("smoothing_probe: times must be > 0");
        EvolutionRun run = evolve(params, p, u, dt, target - t);
        t += run.T;
        u = run.final_state;
        out.emplace_back(t, t * lp_norm(apply_generator(params, u), p));
    }
    return out;
}

}  // namespace sel
