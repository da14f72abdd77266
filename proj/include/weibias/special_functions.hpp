#pragma once

#include <array>
#include <numbers>

namespace weibias {

namespace constants {

inline constexpr double euler_gamma = std::numbers::egamma;  // 0.5772156649015329
inline constexpr double zeta3 = 1.2020569031595942854;     // Apery's constant
// Second derivative of the digamma function at 1.
inline constexpr double psi2_at_1 = -2.0 * zeta3;
inline constexpr double pi = std::numbers::pi;

}  // namespace constants

/// j-th derivative with respect to z of the lower incomplete gamma function
/// gamma(z, x), evaluated at z = 1:
///
///     integral_0^x (log t)^j exp(-t) dt,   j = 0..3, x > 0.
///
/// The [0, min(x, 1)] piece is summed from the exponential series with the
/// closed-form moments of t^m (log t)^j; the [1, x] piece uses adaptive
/// Gauss-Kronrod quadrature on the smooth integrand.
double inc_gamma_deriv(int j, double x);

/// All four orders at once; shares the quadrature work. Index j holds the
/// j-th derivative.
std::array<double, 4> inc_gamma_derivs(double x);

/// Exponential integral Ei(z) for z < 0, i.e. -E1(-z).
double exp_integral_ei(double z);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(s, x) and its complement Q(s, x).
double regularized_lower_gamma(double s, double x);
double regularized_upper_gamma(double s, double x);

/// Unregularized incomplete gamma functions: gamma(s, x) and Gamma(s, x).
double lower_inc_gamma(double s, double x);
double upper_inc_gamma(double s, double x);

}  // namespace weibias
