/**
 * @file params.hpp
 * @brief Parameter algebra of L = |x|^a Lap + c|x|^{a-1} (x/|x|).grad - b|x|^{a-2}
 *        and the semigroup-generation classifier.
 *
 * All functions are pure. The classifier has a floating-point entry point
 * (ties inside a 1e-12 band are reported as endpoints) and an exact one over
 * rationals.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace sel {

using Rational = boost::multiprecision::mpq_rational;

/// The tuple (N, alpha, b, c).
struct OperatorParams {
    int N = 3;
    double alpha = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// Vertex of the indicial parabola, (N-2+c)/2.
    double s0() const { return 0.5 * (N - 2 + c); }

    /// Throws InvalidInput unless N >= 1 and all fields are finite.
    void validate() const;
};

/// Same tuple with exact rational entries.
struct RationalParams {
    int N = 3;
    Rational alpha{0};
    Rational b{0};
    Rational c{0};

    OperatorParams to_double() const;
};

enum class RootKind { Distinct, Double, Complex };

struct SpectralSummary {
    double discriminant = 0.0;  ///< D_c = b + s0^2
    RootKind kind = RootKind::Distinct;
    double s0 = 0.0;
    double s1 = 0.0;  ///< NaN when complex
    double s2 = 0.0;  ///< NaN when complex
};

/// f(s) = b + s(N-2+c-s).
double f_eval(const OperatorParams& p, double s);

SpectralSummary spectral_summary(const OperatorParams& p);

/// (N, a, b + (c-a)(a-2+N), 2a - c)
OperatorParams adjoint_params(const OperatorParams& p);
RationalParams adjoint_params(const RationalParams& p);

/// (N, 4-a, b + c(N-2), -c)
OperatorParams kelvin_params(const OperatorParams& p);
RationalParams kelvin_params(const RationalParams& p);

enum class Verdict {
    GeneratesMin,
    GeneratesIntOnly,
    GeneratesMax,
    GeneratesMinAndMax,
    NoRealizationGenerates,
    Alpha2AllP,
    NegativeDiscriminant
};

enum class DomainKind { WholeSpace, Ball, Exterior };

std::string to_string(Verdict v);
std::string to_string(DomainKind d);
/// Accepts "whole", "ball", "exterior" (and the enum spellings).
std::optional<DomainKind> parse_domain_kind(const std::string& s);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(double x) const;
};

struct Classification {
    Verdict verdict = Verdict::NoRealizationGenerates;
    DomainKind domain_kind = DomainKind::WholeSpace;
    double n_over_p = 0.0;
    bool generates = false;
    bool all_p = false;                     ///< generation for every p in (1, inf)
    std::optional<Interval> interval;       ///< generation range for N/p
    std::optional<Interval> min_interval;   ///< range where L_min generates
    std::optional<Interval> max_interval;   ///< range where L_max generates
    std::optional<Interval> theta_interval; ///< I; nullopt when empty
    std::optional<double> theta0;           ///< critical case only
    bool lint_equals_min = false;
    bool lint_equals_max = false;
    std::optional<bool> selfadjoint;        ///< only when c = alpha and p = 2
    bool endpoint_tie = false;              ///< a comparison fell inside the band
    bool exact = false;                     ///< computed in rational arithmetic
};

/// Floating-point classifier. Throws InvalidInput for p <= 1 or bad params.
Classification classify(const OperatorParams& params, double p,
                        DomainKind domain = DomainKind::WholeSpace);

/// Exact classifier; every comparison against s0 +- sqrt(D_c) is decided
/// by squaring, so endpoints are never misjudged.
Classification classify_exact(const RationalParams& params, const Rational& p,
                              DomainKind domain = DomainKind::WholeSpace);

/// f((N+alpha-2)/p); L_min is dissipative in L^p iff this is >= 0.
double dissipativity_margin(const OperatorParams& params, double p);

/// l_alpha, or nullopt when the form is not sectorial at (params, p).
std::optional<double> sectoriality_constant(const OperatorParams& params, double p);

struct ThetaData {
    std::optional<Interval> interval;  ///< {theta in [0,1] : f(N/p + theta(alpha-2)) > 0}
    std::optional<double> theta0;
};

/// Requires alpha != 2.
ThetaData theta_data(const OperatorParams& params, double p);

/// Parses "3", "-1/4", "0.75", "1e-3" exactly. nullopt on anything else.
std::optional<Rational> parse_rational(const std::string& text);

double to_double(const Rational& q);

}  // namespace sel
