#pragma once

// Test-only double-exponential quadrature used as an independent oracle.
// Shares no code with the library's special functions.

#include <cmath>
#include <functional>
#include <numbers>

namespace weibias::oracle {

namespace detail {

// tanh-sinh on [a, b]; tolerates integrable endpoint singularities.
// Returns NaN when the level sequence did not settle below tol.
inline double tanh_sinh_once(const std::function<double(double)>& f, double a, double b, double tol,
                             int max_level = 12) {
  const double half = 0.5 * (b - a);
  const double half_pi = std::numbers::pi / 2;
  // Nodes reach ~1e-275 from the endpoints, so x^-0.9 type singularities lose
  // nothing measurable.
  constexpr double t_max = 6.0;
  auto term = [&](double t) {
    const double s = half_pi * std::sinh(t);
    const double ch = std::cosh(s);
    const double w = half_pi * std::cosh(t) / (ch * ch);
    // 1 - tanh|s|, the distance to the nearer endpoint, without cancellation.
    const double gap = 2.0 / (std::exp(2.0 * std::abs(s)) + 1.0);
    if (gap == 0.0) return 0.0;
    const double x = t >= 0 ? b - half * gap : a + half * gap;
    const double v = f(x);
    return std::isfinite(v) ? w * v : 0.0;
  };
  double h = 1.0;
  double sum = term(0.0);
  for (double t = h; t <= t_max; t += h) sum += term(t) + term(-t);
  double estimate = half * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2 * h) sum += term(t) + term(-t);
    const double next = half * h * sum;
    if (level > 3 && std::abs(next - estimate) <= tol * std::max(1.0, std::abs(next))) return next;
    estimate = next;
  }
  return std::nan("");
}

}  // namespace detail

/// Integral of f over [a, b], bisecting where tanh-sinh does not settle.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13, int depth = 0) {
  if (a == b) return 0.0;
  const double v = detail::tanh_sinh_once(f, a, b, tol);
  if (std::isfinite(v) || depth >= 14) return v;
  const double m = 0.5 * (a + b);
  return integrate(f, a, m, tol, depth + 1) + integrate(f, m, b, tol, depth + 1);
}

/// Integral over [a, inf) via the map x = a + t / (1 - t), t in [0, 1).
inline double integrate_to_infinity(const std::function<double(double)>& f, double a,
                                    double tol = 1e-13) {
  auto g = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    return f(x) / (one_minus * one_minus);
  };
  return integrate(g, 0.0, 1.0, tol);
}

/// Sum of integrals over consecutive pieces [points[i], points[i+1]].
template <class Points>
double integrate_pieces(const std::function<double(double)>& f, const Points& points,
                        double tol = 1e-13) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) total += integrate(f, points[i], points[i + 1], tol);
  return total;
}

}  // namespace weibias::oracle
