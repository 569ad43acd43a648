#include "sel/specfun.hpp"

#include "sel/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr double kRecipGamma[] = {
    1.0,
    0.5772156649015328606065,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.1665386113822914895017,
    -0.04219773455554433674821,
    -0.009621971527876973562115,
    0.007218943246663099542395,
    -0.001165167591859065112114,
    -0.0002152416741149509728157,
    0.0001280502823881161861532,
    -0.00002013485478078823865569,
    -0.000001250493482142670657345,
    0.000001133027231981695882374,
    -2.05633841697760710345e-7,
    6.116095104481415817862e-9,
    5.002007644469222930056e-9,
    -1.181274570487020144588e-9,
    1.043426711691100510492e-10,
    7.78226343990507125405e-12,
    -3.696805618642205708188e-12,
    5.100370287454475979015e-13,
    -2.058326053566506783222e-14,
    -5.34812253942301798237e-15,
    1.226778628238260790159e-15,
    -1.181259301697458769514e-16,
    1.18669225475160033258e-18,
    1.412380655318031781556e-18,
    -2.298745684435370206592e-19,
    1.714406321927337433384e-20,
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),  gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
void temme_gammas(double mu, double& gam1, double& gam2) {
    const double mu2 = mu * mu;
    gam1 = 0.0;
    gam2 = 0.0;
    double pw = 1.0;
    constexpr int n = sizeof(kRecipGamma) / sizeof(kRecipGamma[0]);
    for (int k = 0; k + 1 < n; k += 2) {
        gam2 += kRecipGamma[k] * pw;
        gam1 -= kRecipGamma[k + 1] * pw;
        pw *= mu2;
    }
}

void check_args(double nu, double x) {
    if (!std::isfinite(nu) || !std::isfinite(x)) throw InvalidInput("bessel: non-finite argument");
    if (nu < 0) throw InvalidInput("bessel: order must be >= 0");
    if (!(x > 0)) throw InvalidInput("bessel: argument must be > 0");
}

// (x/2)^nu / Gamma(nu+1) without spurious overflow
double series_prefactor(double nu, double x) {
    if (nu < 150) {
        double v = std::pow(0.5 * x, nu) / std::tgamma(nu + 1);
        if (std::isfinite(v) && v > 0) return v;
    }
    return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1));
}

// Unscaled I_nu by the ascending series.
double i_series_value(double nu, double x) {
    const double y = 0.25 * x * x;
    double term = series_prefactor(nu, x);
    double sum = term;
    for (int m = 1; m < kMaxIter; ++m) {
        term *= y / (m * (m + nu));
        sum += term;
        if (term < kEps * sum) return sum;
    }
    throw NumericalFailure("bessel: I series did not converge");
}

// Unscaled I_{-nu} for non-integer nu > 0.
double i_negative_series(double nu, double x) {
    const double y = 0.25 * x * x;
    double term = std::pow(0.5 * x, -nu) / std::tgamma(1 - nu);
    double sum = term;
    for (int m = 1; m < kMaxIter; ++m) {
        term *= y / (m * (m - nu));
        sum += term;
        if (m > nu && std::abs(term) < kEps * std::abs(sum)) return sum;
    }
    throw NumericalFailure("bessel: I_{-nu} series did not converge");
}

// Scaled large-argument sum for K (sign = +1) or I (sign = -1).
double asymptotic_sum(double nu, double x, int sign) {
    const double mu = 4 * nu * nu;
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double t = (sign < 0 && (k % 2)) ? -term : term;
        if (std::abs(term) > std::abs(prev) && k > 2) break;
        sum += t;
        prev = term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

namespace bessel_detail {

KPair k_temme(double nu, double x) {
    const int n = static_cast<int>(std::floor(nu + 0.5));
    const double mu = nu - n;
    const double mu2 = mu * mu;
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2;
    temme_gammas(mu, gam1, gam2);
    const double gampl = gam2 - mu * gam1;  // 1/Gamma(1+mu)
    const double gammi = gam2 + mu * gam1;  // 1/Gamma(1-mu)
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i < kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= i - mu;
        q /= i + mu;
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i >= kMaxIter) throw NumericalFailure("bessel: Temme series did not converge");
    double k0 = sum, k1 = sum1 * 2.0 / x;
    for (int j = 1; j <= n; ++j) {
        const double next = (mu + j) * (2.0 / x) * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    const double ex = std::exp(x);
    return {k0 * ex, k1 * ex};
}

KPair k_reflection(double nu, double x) {
    const int n = static_cast<int>(std::floor(nu + 0.5));
    const double mu = nu - n;
    // sin(pi nu) = (-1)^n sin(pi mu), and sin(pi(nu+1)) = -sin(pi nu)
    const double s = ((n % 2) ? -1.0 : 1.0) * std::sin(std::numbers::pi * mu);
    const double h = 0.5 * std::numbers::pi;
    const double k0 = h * (i_negative_series(nu, x) - i_series_value(nu, x)) / s;
    const double k1 = h * (i_negative_series(nu + 1, x) - i_series_value(nu + 1, x)) / (-s);
    const double ex = std::exp(x);
    return {k0 * ex, k1 * ex};
}

KPair k_steed(double nu, double x) {
    const int n = static_cast<int>(std::floor(nu + 0.5));
    const double mu = nu - n;
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < kMaxIter; ++i) {
        a -= 2 * i;
        c = -c * a / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i >= kMaxIter) throw NumericalFailure("bessel: continued fraction did not converge");
    h *= a1;
    double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    double k1 = k0 * (mu + x + 0.5 - h) / x;
    for (int j = 1; j <= n; ++j) {
        const double next = (mu + j) * (2.0 / x) * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    return {k0, k1};
}

KPair k_asymptotic(double nu, double x) {
    const double pre = std::sqrt(std::numbers::pi / (2.0 * x));
    return {pre * asymptotic_sum(nu, x, +1), pre * asymptotic_sum(nu + 1, x, +1)};
}

IPair i_series(double nu, double x) {
    const double ex = std::exp(-x);
    return {i_series_value(nu, x) * ex, i_series_value(nu + 1, x) * ex};
}

IPair i_wronskian(double nu, double x, const KPair& k) {
    // r = I_{nu+1}/I_nu = 1/(b1 + 1/(b2 + ...)), b_j = 2(nu+j)/x, modified Lentz
    double f = kTiny, C = f, D = 0.0;
    int j = 1;
    for (; j < kMaxIter; ++j) {
        const double bj = 2.0 * (nu + j) / x;
        D = bj + D;
        if (D == 0) D = kTiny;
        C = bj + 1.0 / C;
        if (C == 0) C = kTiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    if (j >= kMaxIter) throw NumericalFailure("bessel: ratio continued fraction did not converge");
    // started from b0 = 0 (stored as tiny); after the first step f is already 1/b1
    const double r = f;
    const double i0 = 1.0 / (x * (k.k1 + r * k.k0));
    return {i0, r * i0};
}

IPair i_asymptotic(double nu, double x) {
    const double pre = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
    return {pre * asymptotic_sum(nu, x, -1), pre * asymptotic_sum(nu + 1, x, -1)};
}

}  // namespace bessel_detail

namespace {

struct ScaledPairs {
    bessel_detail::KPair k;
    bessel_detail::IPair i;
};

ScaledPairs scaled_pairs(double nu, double x) {
    using namespace bessel_detail;
    check_args(nu, x);
    ScaledPairs out{};
    const bool large = x >= asymptotic_threshold(nu);
    if (large) {
        out.k = k_asymptotic(nu, x);
        out.i = i_asymptotic(nu, x);
        return out;
    }
    if (x <= kSmallX) {
        const double frac = std::abs(nu - std::round(nu));
        out.k = frac < kNearInteger ? k_temme(nu, x) : k_reflection(nu, x);
    } else {
        out.k = k_steed(nu, x);
    }
    if (!std::isfinite(out.k.k0) || !std::isfinite(out.k.k1))
        throw NumericalFailure("bessel: K overflow at nu=" + std::to_string(nu) +
                               ", x=" + std::to_string(x));
    if (x <= i_series_limit(nu))
        out.i = i_series(nu, x);
    else
        out.i = i_wronskian(nu, x, out.k);
    return out;
}

BesselEval assemble(double nu, double x, const ScaledPairs& sp) {
    BesselEval e;
    e.nu = nu;
    e.x = x;
    e.value_i = sp.i.i0;
    e.value_k = sp.k.k0;
    const double i_minus = sp.i.i1 + (2.0 * nu / x) * sp.i.i0;
    const double k_minus = sp.k.k1 - (2.0 * nu / x) * sp.k.k0;
    e.deriv_i = 0.5 * (i_minus + sp.i.i1);
    e.deriv_k = -0.5 * (k_minus + sp.k.k1);
    return e;
}

}  // namespace

BesselEval bessel_eval_scaled(double nu, double x) { return assemble(nu, x, scaled_pairs(nu, x)); }

BesselEval bessel_eval(double nu, double x) {
    BesselEval e = bessel_eval_scaled(nu, x);
    const double up = std::exp(x), down = std::exp(-x);
    e.value_i *= up;
    e.deriv_i *= up;
    e.value_k *= down;
    e.deriv_k *= down;
    if (!std::isfinite(e.value_i) || !std::isfinite(e.deriv_i) || !std::isfinite(e.value_k) ||
        !std::isfinite(e.deriv_k))
        throw NumericalFailure("bessel: overflow at nu=" + std::to_string(nu) +
                               ", x=" + std::to_string(x) + "; use the scaled variant");
    return e;
}

double bessel_i(double nu, double x) { return bessel_eval(nu, x).value_i; }
double bessel_k(double nu, double x) { return bessel_eval(nu, x).value_k; }
double bessel_i_deriv(double nu, double x) { return bessel_eval(nu, x).deriv_i; }
double bessel_k_deriv(double nu, double x) { return bessel_eval(nu, x).deriv_k; }
double bessel_i_scaled(double nu, double x) { return bessel_eval_scaled(nu, x).value_i; }
double bessel_k_scaled(double nu, double x) { return bessel_eval_scaled(nu, x).value_k; }

}  // namespace sel
