/**
 * @file specfun.hpp
 * @brief Modified Bessel functions I_nu, K_nu of real order nu >= 0 and
 *        argument x > 0, with first derivatives and exponentially scaled forms.
 *
 * Regimes (internal constants, checked for overlap in the tests):
 *   K: x <= 2            series (reflection formula, or Temme's series when
 *                        |nu - round(nu)| < 1e-4)
 *      2 < x < 30(1+nu)  Steed's continued fraction
 *      x >= 30(1+nu)     large-argument expansion
 *   I: x <= max(2,nu/2)  ascending series
 *      otherwise         continued fraction for I_{nu+1}/I_nu plus the
 *                        Wronskian, or the large-argument expansion
 * Orders above the base are reached by forward recurrence on K.
 */
#pragma once

namespace sel {

struct BesselEval {
    double nu = 0.0;
    double x = 0.0;
    double value_i = 0.0;
    double value_k = 0.0;
    double deriv_i = 0.0;
    double deriv_k = 0.0;
};

/// Unscaled values and derivatives. Throws NumericalFailure on overflow,
/// InvalidInput for nu < 0, x <= 0 or non-finite input.
BesselEval bessel_eval(double nu, double x);

/// value_i, deriv_i multiplied by e^{-x}; value_k, deriv_k by e^{x}.
BesselEval bessel_eval_scaled(double nu, double x);

double bessel_i(double nu, double x);
double bessel_k(double nu, double x);
double bessel_i_deriv(double nu, double x);
double bessel_k_deriv(double nu, double x);
double bessel_i_scaled(double nu, double x);  ///< e^{-x} I_nu(x)
double bessel_k_scaled(double nu, double x);  ///< e^{x} K_nu(x)

namespace bessel_detail {

inline constexpr double kSmallX = 2.0;
inline constexpr double kNearInteger = 1e-4;
inline double asymptotic_threshold(double nu) { return 30.0 * (1.0 + nu); }
inline double i_series_limit(double nu) { return nu / 2 > kSmallX ? nu / 2 : kSmallX; }

/// Scaled pair (e^x K_nu, e^x K_{nu+1}).
struct KPair {
    double k0;
    double k1;
};

KPair k_temme(double nu, double x);       ///< x <= 2, any nu
KPair k_reflection(double nu, double x);  ///< x <= 2, nu not near an integer
KPair k_steed(double nu, double x);       ///< x > ~1
KPair k_asymptotic(double nu, double x);  ///< large x

/// Scaled pair (e^{-x} I_nu, e^{-x} I_{nu+1}).
struct IPair {
    double i0;
    double i1;
};

IPair i_series(double nu, double x);
IPair i_wronskian(double nu, double x, const KPair& k);
IPair i_asymptotic(double nu, double x);

}  // namespace bessel_detail

}  // namespace sel
