#pragma once

// Safeguarded Newton iteration with bisection fallback for a scalar function
// that is known to change sign once on a bracket.

#include <cmath>
#include <optional>
#include <utility>

namespace weibias {

struct RootOptions {
  double residual_tol = 1e-10;  // |f(x)| at which the root is accepted
  double x_tol = 1e-12;         // bracket width at which the root is accepted
  int max_iterations = 200;
};

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct Bracket {
  double lo;
  double hi;
};

/// Grows a bracket geometrically from x0 for a decreasing function f (value
/// only is used) until f(lo) > 0 > f(hi), staying inside [x_min, x_max].
/// Returns nullopt when no sign change is found in range.
template <class F>
std::optional<Bracket> expand_decreasing_bracket(F&& f, double x0, double step, double x_min,
                                                 double x_max) {
  double lo = x0;
  double hi = x0;
  const double f0 = f(x0).first;
  if (f0 == 0.0) return Bracket{x0, x0};
  if (f0 > 0.0) {
    for (;;) {
      lo = hi;
      hi = std::min(hi + step, x_max);
      if (f(hi).first <= 0.0) return Bracket{lo, hi};
      if (hi >= x_max) return std::nullopt;
      step *= 2.0;
    }
  }
  for (;;) {
    hi = lo;
    lo = std::max(lo - step, x_min);
    if (f(lo).first >= 0.0) return Bracket{lo, hi};
    if (lo <= x_min) return std::nullopt;
    step *= 2.0;
  }
}

/// f(x) returns {value, derivative}. The bracket must straddle a sign
/// change. Newton steps that leave the bracket, or that fail to halve the
/// step compared with two iterations earlier, are replaced by bisection.
template <class F>
RootResult newton_bisect(F&& f, Bracket bracket, const RootOptions& options = {}) {
  const double f_lo = f(bracket.lo).first;
  const double f_hi = f(bracket.hi).first;
  if (f_lo == 0.0) return {bracket.lo, 0.0, 0, true};
  if (f_hi == 0.0) return {bracket.hi, 0.0, 0, true};
  if ((f_lo > 0.0) == (f_hi > 0.0)) return {bracket.lo, f_lo, 0, false};

  // Orient so that f(negative_side) < 0.
  double neg = f_lo < 0.0 ? bracket.lo : bracket.hi;
  double pos = f_lo < 0.0 ? bracket.hi : bracket.lo;

  double x = 0.5 * (bracket.lo + bracket.hi);
  double step_old = std::abs(bracket.hi - bracket.lo);
  double step = step_old;
  const auto first = f(x);
  double fx = first.first;
  double dfx = first.second;

  RootResult result;
  for (int it = 1; it <= options.max_iterations; ++it) {
    result.iterations = it;
    const bool newton_leaves_bracket = ((x - pos) * dfx - fx) * ((x - neg) * dfx - fx) > 0.0;
    const bool newton_too_slow = std::abs(2.0 * fx) > std::abs(step_old * dfx);
    if (newton_leaves_bracket || newton_too_slow || dfx == 0.0) {
      step_old = step;
      step = 0.5 * (pos - neg);
      x = neg + step;
    } else {
      step_old = step;
      step = fx / dfx;
      x -= step;
    }
    const auto next = f(x);
    fx = next.first;
    dfx = next.second;
    if (fx < 0.0) {
      neg = x;
    } else {
      pos = x;
    }
    if (std::abs(fx) <= options.residual_tol || std::abs(pos - neg) <= options.x_tol) {
      result.x = x;
      result.residual = fx;
      result.converged = true;
      return result;
    }
  }
  result.x = x;
  result.residual = fx;
  return result;
}

}  // namespace weibias
