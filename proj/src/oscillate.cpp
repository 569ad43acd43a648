#include "sel/oscillate.hpp"

#include "sel/errors.hpp"
#include "sel/grid.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace odeint = boost::numeric::odeint;

namespace sel {

namespace {

using State = std::array<double, 4>;

struct Rhs {
    double k, lambda, rate;
    void operator()(const State& x, State& dx, double s) const {
        const double q = k + lambda * std::exp(rate * s);
        dx = {x[1], q * x[0], x[3], q * x[2]};
    }
};

State advance(const Rhs& rhs, State x, double from, double to, double rtol) {
    if (from == to) return x;
    auto stepper = odeint::make_controlled(rtol, rtol, odeint::runge_kutta_dopri5<State>());
    const double dt = (to - from) / 16;
    odeint::integrate_adaptive(stepper, rhs, x, from, to, dt);
    return x;
}

}  // namespace

OscillationCoefficients transform(const OperatorParams& params, double lambda) {
    params.validate();
    if (params.alpha == 2.0) throw InvalidInput("oscillate: alpha must differ from 2");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("oscillate: lambda must be > 0");
    const double k = spectral_summary(params).discriminant;
    if (!(k < 0.0)) throw InvalidInput("oscillate: needs D_c < 0");
    OscillationCoefficients c;
    c.k = k;
    c.rate = 2.0 - params.alpha;
    c.m = std::log(-k / (2.0 * lambda)) / c.rate;
    return c;
}

std::array<double, 4> HomogeneousPair::eval(double t) const {
    const std::size_t n = s.size();
    if (n < 2) throw InvalidInput("HomogeneousPair: empty trajectory");
    const bool ascending = s.back() > s.front();
    const double lo = ascending ? s.front() : s.back(), hi = ascending ? s.back() : s.front();
    if (t < lo - 1e-12 || t > hi + 1e-12) throw InvalidInput("HomogeneousPair: t outside the trajectory");
    // index i with t between s[i] and s[i+1]
    std::size_t i;
    if (ascending)
        i = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), t) - s.begin());
    else
        i = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), t, std::greater<double>()) - s.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = s[i + 1] - s[i];
    const double x = (t - s[i]) / h;
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x), h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x), h11 = x * x * (x - 1);
    const double d00 = 6 * x * (x - 1) / h, d10 = (1 - x) * (1 - 3 * x), d01 = -d00, d11 = x * (3 * x - 2);
    auto val = [&](const std::vector<double>& y, const std::vector<double>& dy) {
        return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
    };
    auto der = [&](const std::vector<double>& y, const std::vector<double>& dy) {
        return d00 * y[i] + d10 * dy[i] + d01 * y[i + 1] + d11 * dy[i + 1];
    };
    return {val(u1, du1), der(u1, du1), val(u2, du2), der(u2, du2)};
}

double HomogeneousPair::wronskian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        worst = std::max(worst, std::abs(u1[i] * du2[i] - du1[i] * u2[i] - 1.0));
    return worst;
}

HomogeneousPair integrate_pair(double k, double lambda, double rate, double s_start, double s_end, double step,
                               double rtol) {
    if (!(step > 0.0) || !(rtol > 0.0)) throw InvalidInput("integrate_pair: step and rtol must be > 0");
    if (!(std::isfinite(s_start) && std::isfinite(s_end)) || s_start == s_end)
        throw InvalidInput("integrate_pair: need distinct finite endpoints");
    const double dir = s_end > s_start ? 1.0 : -1.0;
    const auto count = static_cast<std::size_t>(std::floor(std::abs(s_end - s_start) / step + 1e-9));
    std::vector<double> times;
    for (std::size_t i = 0; i <= count; ++i) times.push_back(s_start + dir * step * static_cast<double>(i));
    if (std::abs(times.back() - s_end) > 1e-12) times.push_back(s_end);

    HomogeneousPair out;
    out.k = k;
    out.lambda = lambda;
    out.rate = rate;
    const Rhs rhs{k, lambda, rate};
    State x{1.0, 0.0, 0.0, 1.0};
    auto stepper = odeint::make_dense_output(rtol, rtol, odeint::runge_kutta_dopri5<State>());
    auto observe = [&](const State& y, double t) {
        out.s.push_back(t);
        out.u1.push_back(y[0]);
        out.du1.push_back(y[1]);
        out.u2.push_back(y[2]);
        out.du2.push_back(y[3]);
    };
    try {
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dir * step / 4, observe);
    } catch (const std::exception& e) {
        throw NumericalFailure(std::string("integrate_pair: step-size failure: ") + e.what());
    }
    for (double v : out.u1)
        if (!std::isfinite(v)) throw NumericalFailure("integrate_pair: solution overflow");
    return out;
}

std::vector<double> find_zeros(const HomogeneousPair& pair, int which, double tol) {
    if (which != 0 && which != 1) throw InvalidInput("find_zeros: which must be 0 or 1");
    const std::vector<double>& y = which == 0 ? pair.u1 : pair.u2;
    const Rhs rhs{pair.k, pair.lambda, pair.rate};
    std::vector<double> zeros;
    std::size_t last = y.size();  // last index with nonzero value
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) continue;
        if (last < y.size() && (y[last] > 0) != (y[i] > 0)) {
            const State x0{pair.u1[last], pair.du1[last], pair.u2[last], pair.du2[last]};
            const double s_a = pair.s[last];
            double a = s_a, b = pair.s[i];
            const bool pos_a = y[last] > 0;
            while (std::abs(b - a) > tol) {
                const double mid = 0.5 * (a + b);
                const State xm = advance(rhs, x0, s_a, mid, 1e-12);
                const double v = xm[which == 0 ? 0 : 2];
                if (v == 0.0) {
                    a = b = mid;
                    break;
                }
                ((v > 0) == pos_a ? a : b) = mid;
            }
            zeros.push_back(0.5 * (a + b));
        }
        last = i;
    }
    return zeros;
}

double OscillationRun::kernel(double s, double t) const {
    const auto a = pair.eval(s), b = pair.eval(t);
    return b[0] * a[2] - a[0] * b[2];
}

OscillationRun integrate_homogeneous(const OperatorParams& params, double lambda) {
    return integrate_homogeneous(params, lambda, params.alpha < 2.0 ? -40.0 : 40.0);
}

OscillationRun integrate_homogeneous(const OperatorParams& params, double lambda, double s_far) {
    OscillationRun run;
    run.params = params;
    run.lambda = lambda;
    run.coeffs = transform(params, lambda);
    run.s_far = s_far;
    const bool left = run.coeffs.rate > 0;
    if (left ? !(s_far < run.coeffs.m) : !(s_far > run.coeffs.m))
        throw InvalidInput("oscillate: s_far must lie on the oscillatory side of m");
    run.pair = integrate_pair(run.coeffs.k, lambda, run.coeffs.rate, run.coeffs.m, s_far);
    run.zeros = find_zeros(run.pair, 0);
    run.zeros_u2 = find_zeros(run.pair, 1);
    return run;
}

OscillationRun build_counterexample(OscillationRun run) {
    const double m = run.coeffs.m;
    // lobes of u2 between consecutive zeros, starting at m
    std::vector<double> ends{m};
    ends.insert(ends.end(), run.zeros_u2.begin(), run.zeros_u2.end());
    double lo = 0, hi = 0;
    bool found = false;
    for (std::size_t j = 0; j + 1 < ends.size(); ++j) {
        const double c = 0.5 * (ends[j] + ends[j + 1]);
        if (run.pair.eval(c)[2] > 0) {
            const double hw = 0.4 * std::abs(ends[j + 1] - ends[j]);
            lo = c - hw;
            hi = c + hw;
            found = true;
            break;
        }
    }
    if (!found) throw NumericalFailure("oscillate: no window with G(m, .) < 0 in the search box");

    const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const double mass = 35.0 / (32.0 * hw);
    const std::size_t n = 801;
    const double h = (hi - lo) / (n - 1);
    const double s0 = run.params.s0(), alpha = run.params.alpha;
    std::vector<double> w_g(n), w_src(n);
    run.g_s.resize(n);
    run.g_values.resize(n);
    run.phi_r.resize(n);
    run.phi_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + h * static_cast<double>(i);
        const double x = (t - c) / hw;
        const double q = std::max(0.0, 1 - x * x);
        const double g = mass * q * q * q;
        run.g_s[i] = t;
        run.g_values[i] = g;
        run.phi_r[i] = std::exp(t);
        run.phi_values[i] = g * std::exp((alpha - 1.5) * t);
        const double G = run.kernel(m, t);
        w_g[i] = G * g;
        w_src[i] = G * std::exp((2 - alpha + s0) * t) * run.phi_values[i];
    }
    run.window_lo = lo;
    run.window_hi = hi;
    run.witness_s = m;
    run.witness_value = simpson(w_g, h);
    run.witness_value_source = simpson(w_src, h);
    run.constructed = true;
    return run;
}

}  // namespace sel
