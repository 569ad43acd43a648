#include "sel/forms.hpp"

#include "sel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace sel {

namespace {

using cd = std::complex<double>;

// C^2 step, 0 at x <= 0 and 1 at x >= 1
double smoothstep5(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * x * (10 + x * (-15 + 6 * x));
}

// first and second derivatives on a uniform grid: 4th order inside, 2nd order on the two end nodes
template <class T>
void derivatives(const std::vector<T>& y, double h, std::vector<T>& d1, std::vector<T>& d2) {
    const std::size_t n = y.size();
    d1.assign(n, T(0));
    d2.assign(n, T(0));
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d1[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12 * h);
        d2[i] = (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) / (12 * h * h);
    }
    for (std::size_t i : {std::size_t(1), n - 2}) {
        d1[i] = (y[i + 1] - y[i - 1]) / (2 * h);
        d2[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
    }
}

double max_abs(const std::vector<cd>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double reg_pow(double mod2, double delta2, double e) { return std::pow(mod2 + delta2, 0.5 * e); }

// The form for the operator with weight exponent alpha_eff (alpha itself, or beta for
// the coercivity variant); b is shifted by lambda_n.
FormReport form_core(int N, double alpha_eff, double b, double c, double p, const TestFunction& tf) {
    tf.validate();
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("forms: need 1 < p < inf");
    const std::size_t n = tf.g.size();
    const double h = tf.grid.h();
    const double kappa = N - 2 + c, s0 = 0.5 * kappa;
    const double bn = b + harmonic_eigenvalue(N, tf.n);
    const double q = (N + alpha_eff - 2) / p;
    const double fn = bn + q * (kappa - q);
    const double S = sphere_measure(N);

    FormReport rep;
    rep.margin_used = fn;
    const double gmax = max_abs(tf.g);
    if (gmax == 0.0) {
        rep.passed = true;
        rep.scale = 1e-300;
        return rep;
    }
    std::vector<cd> us, uss;
    derivatives(tf.g, h, us, uss);
    const double du = 1e-12 * gmax;

    std::vector<double> re(n), im(n), re_raw(n), b2(n), c2(n), d2(n);
    std::vector<cd> v(n), vs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = tf.grid.s(i);
        const cd u = tf.g[i];
        const cd minus_lu = -(uss[i] + kappa * us[i] - bn * u);
        const double w = S * std::exp((alpha_eff - 2 + N) * s);
        const double mod2 = std::norm(u);
        const cd term = w * minus_lu * std::conj(u);
        const double m = reg_pow(mod2, du * du, p - 2);
        re[i] = term.real() * m;
        im[i] = term.imag() * m;
        if (p >= 2.0) re_raw[i] = term.real() * std::pow(std::sqrt(mod2), p - 2);
        const double eq = std::exp(q * s);
        v[i] = eq * u;
        vs[i] = eq * (us[i] + q * u);
    }
    const double dv = 1e-12 * max_abs(v);
    for (std::size_t i = 0; i < n; ++i) {
        const double mod2 = std::norm(v[i]);
        const cd z = std::conj(v[i]) * vs[i];
        const double m = reg_pow(mod2, dv * dv, p - 4);
        b2[i] = S * m * z.real() * z.real();
        c2[i] = S * m * z.imag() * z.imag();
        d2[i] = S * std::pow(std::sqrt(mod2), p);
    }

    rep.real_part = simpson(re, h);
    rep.imaginary_part = simpson(im, h);
    const double B2 = simpson(b2, h), C2 = simpson(c2, h), D2 = simpson(d2, h);
    if (!std::isfinite(rep.real_part) || !std::isfinite(rep.imaginary_part) || !std::isfinite(B2 + C2 + D2))
        throw NumericalFailure("forms: quadrature overflow");
    const double identity = (p - 1) * B2 + C2 + fn * D2;
    rep.lower_bound = fn * D2;
    rep.scale = (p - 1) * B2 + C2 + std::abs(fn) * D2 + 1e-300;
    rep.identity_residual = std::abs(rep.real_part - identity) / rep.scale;
    const double tol = 1e-8 * rep.scale;
    rep.passed = rep.real_part >= rep.lower_bound - tol;
    if (p >= 2.0) rep.regularization_gap = std::abs(rep.real_part - simpson(re_raw, h)) / rep.scale;
    const double gap = s0 - q;
    const double l0 = (p - 2) * (p - 2) / (4 * (p - 1));
    if (fn > 0.0)
        rep.l_alpha = std::sqrt(l0 + gap * gap / fn);
    else if (fn == 0.0 && gap == 0.0)
        rep.l_alpha = std::sqrt(l0);
    if (rep.l_alpha) rep.imag_bound_ok = std::abs(rep.imaginary_part) <= *rep.l_alpha * rep.real_part + tol;
    return rep;
}

// C^2 plateau of half length P with ramps of width w, centred at 0
double plateau(double s, double P, double w) { return smoothstep5((P + w - std::abs(s)) / w); }

TestFunction plateau_profile(double exponent, double P, double w, std::size_t nodes, double p) {
    const double edge = P + w + 0.1;
    return TestFunction::make(-edge, edge, nodes,
                              [&](double s) { return cd(std::exp(exponent * s) * plateau(s, P, w)); }, 0, p);
}

}  // namespace

double harmonic_eigenvalue(int N, int n) {
    if (n < 0) throw InvalidInput("harmonic order must be >= 0");
    return static_cast<double>(n) * (n + N - 2);
}

TestFunction TestFunction::make(double s_lo, double s_hi, std::size_t nodes,
                                const std::function<std::complex<double>(double)>& fn, int n, double p) {
    TestFunction tf;
    tf.grid = LogGrid::make(s_lo, s_hi, nodes);
    tf.n = n;
    tf.p = p;
    tf.g.resize(nodes);
    for (std::size_t i = 2; i + 2 < nodes; ++i) tf.g[i] = fn(tf.grid.s(i));
    tf.validate();
    return tf;
}

void TestFunction::validate() const {
    if (g.size() != grid.size() || g.size() < 9) throw InvalidInput("TestFunction: need >= 9 nodes matching the grid");
    if (n < 0) throw InvalidInput("TestFunction: harmonic order must be >= 0");
    if (!(p > 1.0)) throw InvalidInput("TestFunction: need p > 1");
    for (std::size_t i : {std::size_t(0), std::size_t(1), g.size() - 2, g.size() - 1})
        if (g[i] != cd(0.0)) throw InvalidInput("TestFunction: support must lie strictly inside the grid");
    for (const auto& x : g)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw InvalidInput("TestFunction: non-finite value");
}

FormReport dissipativity_form(const OperatorParams& params, const TestFunction& tf) {
    params.validate();
    return form_core(params.N, params.alpha, params.b, params.c, tf.p, tf);
}

FormReport weighted_coercivity(const OperatorParams& params, double p, const TestFunction& tf) {
    params.validate();
    // V^{p-1} L has the same form as L with alpha replaced by beta
    const double beta = params.alpha + (p - 1) * (params.alpha - 2);
    return form_core(params.N, beta, params.b, params.c, p, tf);
}

TestFunction violation_profile(const OperatorParams& params, double p, double delta, double half_length, double ramp,
                               std::size_t nodes) {
    params.validate();
    return plateau_profile(-(params.N + params.alpha - 2) / p + delta, half_length, ramp, nodes, p);
}

TestFunction coercivity_near_optimizer(const OperatorParams& params, double p, double half_length, double ramp,
                                       std::size_t nodes) {
    params.validate();
    return plateau_profile(-(params.N / p + params.alpha - 2), half_length, ramp, nodes, p);
}

ViolationSweep violation_sweep(const OperatorParams& params, double p, const std::vector<double>& deltas) {
    ViolationSweep out;
    out.deltas = deltas;
    out.min_ratio = std::numeric_limits<double>::infinity();
    for (double d : deltas) {
        FormReport r = dissipativity_form(params, violation_profile(params, p, d));
        const double ratio = r.real_part / r.scale;
        out.min_ratio = std::min(out.min_ratio, ratio);
        if (ratio <= -1e-3 && (!out.first_violation || d > *out.first_violation)) out.first_violation = d;
        out.reports.push_back(r);
    }
    return out;
}

FormReport log_hardy(double p, const RadialProfile& v, int N, std::size_t nodes) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("log_hardy: need 1 < p < inf");
    if (!(v.t_min > 0.0 && v.t_max > v.t_min)) throw InvalidInput("log_hardy: need 0 < t_min < t_max");
    if (nodes < 5) throw InvalidInput("log_hardy: need >= 5 nodes");
    const double x0 = std::log(v.t_min), x1 = std::log(v.t_max);
    const double h = (x1 - x0) / static_cast<double>(nodes - 1);
    std::vector<double> val(nodes), der(nodes);
    double vmax = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        std::tie(val[i], der[i]) = v.eval(std::exp(x0 + h * static_cast<double>(i)));
        vmax = std::max(vmax, std::abs(val[i]));
    }
    const double dl2 = 1e-24 * vmax * vmax;
    const double S = sphere_measure(N);
    std::vector<double> lhs(nodes), rhs(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double t = std::exp(x0 + h * static_cast<double>(i));
        lhs[i] = S * (p - 1) * reg_pow(val[i] * val[i], dl2, p - 2) * der[i] * der[i] * t;
        rhs[i] = S * (p - 1) / (p * p) * std::pow(std::abs(val[i]), p) / t;
    }
    FormReport rep;
    rep.margin_used = (p - 1) / (p * p);
    rep.real_part = simpson(lhs, h);
    rep.lower_bound = simpson(rhs, h);
    if (!std::isfinite(rep.real_part) || !std::isfinite(rep.lower_bound))
        throw NumericalFailure("log_hardy: quadrature overflow");
    rep.scale = rep.real_part + rep.lower_bound + 1e-300;
    rep.passed = rep.real_part >= rep.lower_bound - 1e-8 * rep.scale;
    return rep;
}

RadialProfile log_hardy_near_optimizer(double p, double R) {
    if (!(R > 1.0)) throw InvalidInput("log_hardy_near_optimizer: need R > 1");
    RadialProfile prof;
    prof.t_min = 1e-8;
    prof.t_max = 60 * R;
    prof.eval = [p, R](double t) {
        const double a = std::pow(t, 1 / p) * std::exp(-t / R);
        const double e = -std::expm1(-t);
        const double v = a * e;
        return std::pair{v, v * (1 / (p * t) - 1 / R) + a * std::exp(-t)};
    };
    return prof;
}

InterpolationReport interpolation_probe(const OperatorParams& params, double p, const std::vector<GridFunction>& corpus,
                                        const std::vector<double>& epsilons) {
    params.validate();
    if (!(p > 1.0)) throw InvalidInput("interpolation_probe: need p > 1");
    InterpolationReport rep;
    rep.epsilons = epsilons;
    rep.constants.assign(epsilons.size(), {});
    rep.max_constant.assign(epsilons.size(), 0.0);
    const double kappa = params.N - 2 + params.c, w = params.alpha - 2;
    rep.bounded = true;
    for (const GridFunction& u : corpus) {
        std::vector<double> d1, d2;
        derivatives(u.values, u.grid.h(), d1, d2);
        GridFunction grad = u, lu = u;
        for (std::size_t i = 0; i < u.size(); ++i) {
            grad.values[i] = d1[i];
            lu.values[i] = d2[i] + kappa * d1[i] - params.b * u.values[i];
        }
        const double A = lp_norm(grad, p, w), B = lp_norm(lu, p, w), E = lp_norm(u, p, w);
        for (std::size_t k = 0; k < epsilons.size(); ++k) {
            const double eps = epsilons[k];
            const double C = E > 0 ? std::max(0.0, eps * (A - eps * B) / E) : 0.0;
            if (!std::isfinite(C)) rep.bounded = false;
            rep.constants[k].push_back(C);
            rep.max_constant[k] = std::max(rep.max_constant[k], C);
        }
    }
    return rep;
}

std::vector<GridFunction> interpolation_corpus(const LogGrid& grid, std::size_t count, std::uint64_t seed, int N,
                                               double p) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double span = grid.s_max - grid.s_min;
    std::vector<GridFunction> out;
    for (std::size_t j = 0; j < count; ++j) {
        const double c = grid.s_min + span * (0.3 + 0.4 * U(rng));
        const double w = span * (0.02 + 0.15 * U(rng));
        const double a = 0.6 * U(rng) - 0.3, om = 0.5 + 5 * U(rng), ph = 2 * std::numbers::pi * U(rng);
        const int k = 3 + static_cast<int>(rng() % 3);
        out.push_back(sample(grid, [&](double r) {
            const double s = std::log(r), x = (s - c) / w;
            if (std::abs(x) >= 1) return 0.0;
            return std::pow(1 - x * x, k) * (1 + a * std::sin(om * s + ph));
        }, N, p));
    }
    return out;
}

TestFunction random_test_function(std::mt19937_64& rng, int n, double p, bool complex_phase) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double c = -3 + 6 * U(rng), w = 0.5 + 2.5 * U(rng);
    const int k = 3 + static_cast<int>(rng() % 3);
    const double a = U(rng) - 0.5, om = 0.5 + 3.5 * U(rng), ph = 2 * std::numbers::pi * U(rng);
    const double beta = complex_phase ? 6 * U(rng) - 3 : 0.0, gam = 0.2 + 1.8 * U(rng);
    const double pad = 0.02 * w;
    return TestFunction::make(c - w - pad, c + w + pad, 2001, [=](double s) {
        const double x = (s - c) / w;
        if (std::abs(x) >= 1) return cd(0.0);
        const double rho = std::pow(1 - x * x, k) * (1 + a * std::sin(om * s + ph));
        return std::polar(rho, beta * std::sin(gam * (s - c)));
    }, n, p);
}

SuiteResult dissipativity_suite(const OperatorParams& params, double p, std::uint64_t seed, std::size_t count) {
    SuiteResult out;
    out.name = "dissipativity";
    out.worst = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < count; ++j) {
        const int n = static_cast<int>(rng() % 5);
        FormReport r = dissipativity_form(params, random_test_function(rng, n, p));
        out.worst = std::min(out.worst, (r.real_part - r.lower_bound) / r.scale);
        ++out.draws;
        if (r.passed && r.imag_bound_ok && r.real_part >= -1e-8 * r.scale) ++out.passes;
        out.reports.push_back(r);
    }
    return out;
}

SuiteResult coercivity_suite(const OperatorParams& params, double p, std::uint64_t seed, std::size_t count) {
    SuiteResult out;
    out.name = "coercivity";
    out.worst = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < count; ++j) {
        FormReport r = weighted_coercivity(params, p, random_test_function(rng, 0, p, false));
        const double slack = (r.real_part - r.lower_bound) / r.scale;
        out.worst = std::min(out.worst, slack);
        ++out.draws;
        if (r.passed && slack > 1e-8) ++out.passes;
        out.reports.push_back(r);
    }
    return out;
}

SuiteResult log_hardy_suite(double p, std::uint64_t seed, std::size_t count, int N) {
    SuiteResult out;
    out.name = "log-hardy";
    out.worst = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (std::size_t j = 0; j < count; ++j) {
        const double T1 = std::exp(-2 + 4 * U(rng)), T2 = std::exp(4 * U(rng));
        const int k = 1 + static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 2);
        RadialProfile prof;
        prof.t_min = 1e-12;
        prof.t_max = T1 + T2 * std::pow(60.0, 1.0 / m);
        prof.eval = [=](double t) {
            const double e = -std::expm1(-t / T1);
            const double a = std::pow(e, k), da = k * std::pow(e, k - 1) * std::exp(-t / T1) / T1;
            const double y = std::pow(t / T2, m), g = std::exp(-y), dg = -g * m * y / t;
            return std::pair{a * g, da * g + a * dg};
        };
        FormReport r = log_hardy(p, prof, N);
        out.worst = std::min(out.worst, (r.real_part - r.lower_bound) / r.scale);
        ++out.draws;
        if (r.passed) ++out.passes;
        out.reports.push_back(r);
    }
    return out;
}

}  // namespace sel
