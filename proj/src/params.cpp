#include "sel/params.hpp"

#include "sel/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace sel {

void OperatorParams::validate() const {
    if (N < 1) throw InvalidInput("N must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(b) || !std::isfinite(c))
        throw InvalidInput("alpha, b, c must be finite");
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

OperatorParams RationalParams::to_double() const {
    return OperatorParams{N, sel::to_double(alpha), sel::to_double(b), sel::to_double(c)};
}

double f_eval(const OperatorParams& p, double s) { return p.b + s * (p.N - 2 + p.c - s); }

SpectralSummary spectral_summary(const OperatorParams& p) {
    SpectralSummary out;
    out.s0 = p.s0();
    out.discriminant = p.b + out.s0 * out.s0;
    if (out.discriminant > 0) {
        double r = std::sqrt(out.discriminant);
        out.kind = RootKind::Distinct;
        out.s1 = out.s0 - r;
        out.s2 = out.s0 + r;
    } else if (out.discriminant == 0) {
        out.kind = RootKind::Double;
        out.s1 = out.s2 = out.s0;
    } else {
        out.kind = RootKind::Complex;
        out.s1 = out.s2 = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

OperatorParams adjoint_params(const OperatorParams& p) {
    return {p.N, p.alpha, p.b + (p.c - p.alpha) * (p.alpha - 2 + p.N), 2 * p.alpha - p.c};
}

RationalParams adjoint_params(const RationalParams& p) {
    return {p.N, p.alpha, p.b + (p.c - p.alpha) * (p.alpha - 2 + p.N), 2 * p.alpha - p.c};
}

OperatorParams kelvin_params(const OperatorParams& p) {
    return {p.N, 4 - p.alpha, p.b + p.c * (p.N - 2), -p.c};
}

RationalParams kelvin_params(const RationalParams& p) {
    return {p.N, 4 - p.alpha, p.b + p.c * (p.N - 2), -p.c};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GeneratesMin: return "GeneratesMin";
        case Verdict::GeneratesIntOnly: return "GeneratesIntOnly";
        case Verdict::GeneratesMax: return "GeneratesMax";
        case Verdict::GeneratesMinAndMax: return "GeneratesMinAndMax";
        case Verdict::NoRealizationGenerates: return "NoRealizationGenerates";
        case Verdict::Alpha2AllP: return "Alpha2AllP";
        case Verdict::NegativeDiscriminant: return "NegativeDiscriminant";
    }
    return "?";
}

std::string to_string(DomainKind d) {
    switch (d) {
        case DomainKind::WholeSpace: return "WholeSpace";
        case DomainKind::Ball: return "Ball";
        case DomainKind::Exterior: return "Exterior";
    }
    return "?";
}

std::optional<DomainKind> parse_domain_kind(const std::string& s) {
    std::string t;
    for (char ch : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (t == "whole" || t == "wholespace" || t == "rn") return DomainKind::WholeSpace;
    if (t == "ball") return DomainKind::Ball;
    if (t == "exterior") return DomainKind::Exterior;
    return std::nullopt;
}

bool Interval::contains(double x) const {
    bool above = lo_closed ? x >= lo : x > lo;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

namespace {

// Sign decisions for the exact path.
struct ExactOps {
    using T = Rational;
    bool tie = false;

    int sign(const T& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

    // sign(t - root*sqrt(D)) for D >= 0, root in {-1, +1}
    int surd(const T& t, int root, const T& D) {
        if (root > 0) {
            if (t < 0) return -1;
            T t2 = t * t;
            return t2 < D ? -1 : (t2 == D ? 0 : 1);
        }
        if (t > 0) return 1;
        if (t == 0) return D == 0 ? 0 : 1;
        T t2 = t * t;
        return D > t2 ? 1 : (D == t2 ? 0 : -1);
    }

    static double d(const T& x) { return to_double(x); }
};

// Sign decisions for the floating path with a relative band.
struct FloatOps {
    using T = double;
    double scale = 1.0;
    bool tie = false;

    int sign(double x) {
        if (x == 0.0) return 0;
        if (std::abs(x) <= 1e-12 * scale) {
            tie = true;
            return 0;
        }
        return x > 0 ? 1 : -1;
    }

    int surd(double t, int root, double D) { return sign(t - root * std::sqrt(std::max(D, 0.0))); }

    static double d(double x) { return x; }
};

template <class Ops, class T>
Classification classify_core(int N, const T& alpha, const T& b, const T& c, const T& p,
                             DomainKind domain, Ops& ops) {
    Classification out;
    out.domain_kind = domain;

    const T q = T(N) / p;
    const T s0 = (T(N) - 2 + c) / 2;
    const T D = b + s0 * s0;
    const T a2 = T(2) - alpha;
    const int sa = ops.sign(a2);  // sign(2 - alpha)
    const int sD = ops.sign(D);
    const T zero(0);
    const T lo_shift = sa < 0 ? a2 : zero;
    const T hi_shift = sa > 0 ? a2 : zero;

    out.n_over_p = Ops::d(q);
    const double s0d = Ops::d(s0);
    const double rD = sD > 0 ? std::sqrt(Ops::d(D)) : 0.0;
    const double s1d = s0d - rD, s2d = s0d + rD, a2d = Ops::d(a2);

    // sign(q - (s0 + shift + root*sqrt(D)))
    auto vs = [&](const T& shift, int root) { return ops.surd(q - s0 - shift, root, D); };
    auto fval = [&](const T& s) { return b + s * (T(N) - 2 + c - s); };

    // theta interval and theta0 (alpha != 2)
    if (sa != 0) {
        if (sD > 0) {
            const bool c0 = ops.sign(fval(q)) > 0;
            const bool c1 = ops.sign(fval(q + alpha - 2)) > 0;
            // some theta in [0,1] has s1 < q + theta(alpha-2) < s2
            const bool nonempty = vs(lo_shift, -1) > 0 && vs(hi_shift, +1) < 0;
            if (nonempty) {
                const double qd = out.n_over_p, ad = -a2d;
                double t1 = (s1d - qd) / ad, t2 = (s2d - qd) / ad;
                if (t1 > t2) std::swap(t1, t2);
                Interval I;
                I.lo = c0 ? 0.0 : std::clamp(t1, 0.0, 1.0);
                I.hi = c1 ? 1.0 : std::clamp(t2, 0.0, 1.0);
                I.lo_closed = c0;
                I.hi_closed = c1;
                out.theta_interval = I;
            }
        } else if (sD == 0) {
            const T t0 = (q - s0) / a2;
            if (ops.sign(t0) >= 0 && ops.sign(t0 - 1) <= 0) out.theta0 = Ops::d(t0);
        }
    }

    // self-adjointness flag
    if (ops.sign(c - alpha) == 0 && ops.sign(p - 2) == 0) {
        if (sa == 0) {
            out.selfadjoint = true;
        } else {
            const T h = (T(N) - 2 + alpha) / 2, g = (alpha - 2) / 2;
            out.selfadjoint = ops.sign(b - (g * g - h * h)) >= 0;
        }
    }

    auto set_all_p = [&](Verdict v) {
        out.verdict = v;
        out.generates = true;
        out.all_p = true;
        out.lint_equals_min = out.lint_equals_max = (v == Verdict::Alpha2AllP);
    };

    if (domain == DomainKind::WholeSpace) {
        if (sa == 0) {
            set_all_p(Verdict::Alpha2AllP);
            return out;
        }
        if (sD < 0) {
            out.verdict = Verdict::NegativeDiscriminant;
            return out;
        }
        bool gen, gmin, gmax;
        if (sD > 0) {
            gen = vs(lo_shift, -1) > 0 && vs(hi_shift, +1) < 0;
            if (sa > 0) {
                gmin = vs(a2, -1) >= 0 && vs(a2, +1) < 0;
                gmax = vs(zero, -1) > 0 && vs(zero, +1) <= 0;
                out.min_interval = Interval{s1d + a2d, s2d + a2d, true, false};
                out.max_interval = Interval{s1d, s2d, false, true};
            } else {
                gmin = vs(a2, -1) > 0 && vs(a2, +1) <= 0;
                gmax = vs(zero, -1) >= 0 && vs(zero, +1) < 0;
                out.min_interval = Interval{s1d + a2d, s2d + a2d, false, true};
                out.max_interval = Interval{s1d, s2d, true, false};
            }
            out.interval = Interval{s1d + std::min(0.0, a2d), s2d + std::max(0.0, a2d), false, false};
        } else {
            gen = ops.sign(q - s0 - lo_shift) >= 0 && ops.sign(q - s0 - hi_shift) <= 0;
            gmin = ops.sign(q - s0 - a2) == 0;
            gmax = ops.sign(q - s0) == 0;
            out.min_interval = Interval{s0d + a2d, s0d + a2d, true, true};
            out.max_interval = Interval{s0d, s0d, true, true};
            out.interval = Interval{s0d + std::min(0.0, a2d), s0d + std::max(0.0, a2d), true, true};
        }
        out.generates = gen;
        out.lint_equals_min = gen && gmin;
        out.lint_equals_max = gen && gmax;
        if (!gen)
            out.verdict = Verdict::NoRealizationGenerates;
        else if (gmin && gmax)
            out.verdict = Verdict::GeneratesMinAndMax;
        else if (gmin)
            out.verdict = Verdict::GeneratesMin;
        else if (gmax)
            out.verdict = Verdict::GeneratesMax;
        else
            out.verdict = Verdict::GeneratesIntOnly;
        return out;
    }

    // Ball (alpha >= 2 trivial) and exterior (alpha <= 2 trivial)
    const bool trivial = domain == DomainKind::Ball ? sa <= 0 : sa >= 0;
    if (trivial) {
        set_all_p(Verdict::GeneratesMax);
        return out;
    }
    if (sD < 0) {
        out.verdict = Verdict::NegativeDiscriminant;
        return out;
    }
    bool gen;
    if (domain == DomainKind::Ball) {
        if (sD > 0) {
            gen = vs(zero, -1) > 0 && vs(a2, +1) < 0;
            out.interval = Interval{s1d, s2d + a2d, false, false};
        } else {
            gen = ops.sign(q - s0) >= 0 && ops.sign(q - s0 - a2) <= 0;
            out.interval = Interval{s0d, s0d + a2d, true, true};
        }
    } else {
        if (sD > 0) {
            gen = vs(a2, -1) > 0 && vs(zero, +1) < 0;
            out.interval = Interval{s1d + a2d, s2d, false, false};
        } else {
            gen = ops.sign(q - s0 - a2) >= 0 && ops.sign(q - s0) <= 0;
            out.interval = Interval{s0d + a2d, s0d, true, true};
        }
    }
    out.generates = gen;
    out.verdict = gen ? Verdict::GeneratesIntOnly : Verdict::NoRealizationGenerates;
    return out;
}

}  // namespace

Classification classify(const OperatorParams& params, double p, DomainKind domain) {
    params.validate();
    if (!std::isfinite(p) || !(p > 1.0)) throw InvalidInput("p must satisfy 1 < p < inf");
    FloatOps ops;
    const double s0 = params.s0();
    ops.scale = std::max({1.0, std::abs(params.N / p), std::abs(s0), std::abs(params.alpha),
                          std::sqrt(std::abs(params.b + s0 * s0))});
    Classification out =
        classify_core(params.N, params.alpha, params.b, params.c, p, domain, ops);
    out.endpoint_tie = ops.tie;
    out.exact = false;
    return out;
}

Classification classify_exact(const RationalParams& params, const Rational& p,
                              DomainKind domain) {
    if (params.N < 1) throw InvalidInput("N must be >= 1");
    if (!(p > 1)) throw InvalidInput("p must satisfy 1 < p < inf");
    ExactOps ops;
    Classification out =
        classify_core(params.N, params.alpha, params.b, params.c, p, domain, ops);
    out.exact = true;
    return out;
}

double dissipativity_margin(const OperatorParams& params, double p) {
    if (!(p > 1.0)) throw InvalidInput("p must satisfy 1 < p < inf");
    return f_eval(params, (params.N + params.alpha - 2) / p);
}

std::optional<double> sectoriality_constant(const OperatorParams& params, double p) {
    if (!(p > 1.0)) throw InvalidInput("p must satisfy 1 < p < inf");
    const double x = (params.N + params.alpha - 2) / p;
    const double fx = f_eval(params, x);
    const double d = params.s0() - x;
    const double base = (p - 2) * (p - 2) / (4 * (p - 1));
    const double band = 1e-12 * std::max(1.0, std::abs(x));
    if (std::abs(fx) <= band && std::abs(d) <= band) return std::sqrt(base);
    if (fx > band) return std::sqrt(base + d * d / fx);
    return std::nullopt;
}

ThetaData theta_data(const OperatorParams& params, double p) {
    if (params.alpha == 2.0) throw InvalidInput("theta_data requires alpha != 2");
    Classification cl = classify(params, p, DomainKind::WholeSpace);
    return {cl.theta_interval, cl.theta0};
}

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) return std::nullopt;

    auto parse_decimal = [](const std::string& t) -> std::optional<Rational> {
        if (t.empty()) return std::nullopt;
        size_t i = 0;
        bool neg = false;
        if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
        boost::multiprecision::mpz_int num = 0, den = 1;
        bool digits = false, dot = false;
        for (; i < t.size() && t[i] != 'e' && t[i] != 'E'; ++i) {
            char ch = t[i];
            if (ch == '.') {
                if (dot) return std::nullopt;
                dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                digits = true;
                num = num * 10 + (ch - '0');
                if (dot) den *= 10;
            } else {
                return std::nullopt;
            }
        }
        if (!digits) return std::nullopt;
        long ex = 0;
        if (i < t.size()) {
            std::string es = t.substr(i + 1);
            if (es.empty()) return std::nullopt;
            size_t used = 0;
            try {
                ex = std::stol(es, &used);
            } catch (...) {
                return std::nullopt;
            }
            if (used != es.size() || std::abs(ex) > 400) return std::nullopt;
        }
        Rational r(num, den);
        boost::multiprecision::mpz_int pw = 1;
        for (long k = 0; k < std::abs(ex); ++k) pw *= 10;
        if (ex > 0) r *= Rational(pw);
        if (ex < 0) r /= Rational(pw);
        return neg ? Rational(-r) : r;
    };

    auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    auto a = parse_decimal(s.substr(0, slash));
    auto b = parse_decimal(s.substr(slash + 1));
    if (!a || !b || *b == 0) return std::nullopt;
    return *a / *b;
}

}  // namespace sel
