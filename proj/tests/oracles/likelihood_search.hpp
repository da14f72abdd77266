#pragma once

// Test-only maximizer of the Weibull profile log-likelihood in k: a
// log-spaced grid to locate the peak, then golden-section refinement.
// Written directly from the likelihood; no library code is involved.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace weibias::oracle {

struct Records {
  std::vector<double> y;
  std::vector<std::uint8_t> delta;  // empty: complete data
};

/// Profile log-likelihood: lambda replaced by its maximizer for fixed k.
/// A non-negative log_k_coefficient replaces d in the d log k term, which
/// turns the d/k of the score into that coefficient over k (the MLC score).
inline double profile_loglik(const Records& r, double k, double log_k_coefficient = -1.0) {
  // Logs are centred on the mean event log; the k * ref terms cancel exactly,
  // which keeps the flat top of the likelihood free of rounding noise.
  double d = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < r.y.size(); ++i) {
    if (r.delta.empty() || r.delta[i] != 0) {
      d += 1.0;
      ref += std::log(r.y[i]);
    }
  }
  ref /= d;
  double sum_x = 0.0;
  double max_term = -INFINITY;
  for (std::size_t i = 0; i < r.y.size(); ++i) {
    const double x = std::log(r.y[i]) - ref;
    max_term = std::max(max_term, k * x);
    if (r.delta.empty() || r.delta[i] != 0) sum_x += x;
  }
  // log sum exp(k x) without overflow or underflow.
  double scaled = 0.0;
  for (double y : r.y) scaled += std::exp(k * (std::log(y) - ref) - max_term);
  const double log_sum = max_term + std::log(scaled);
  const double coef = log_k_coefficient < 0.0 ? d : log_k_coefficient;
  // log L = d log k - d log(lambda^k) + (k - 1) sum log y - sum y^k / lambda^k,
  // with lambda^k = sum y^k / d; dropped: terms free of k.
  return coef * std::log(k) - d * log_sum + (k - 1.0) * sum_x;
}

/// argmax of profile_loglik over k in [k_lo, k_hi].
inline double argmax_shape(const Records& r, double log_k_coefficient = -1.0, double k_lo = 1e-3,
                           double k_hi = 1e3) {
  const int grid = 600;
  const double step = std::log(k_hi / k_lo) / grid;
  int best = 0;
  double best_value = -INFINITY;
  for (int i = 0; i <= grid; ++i) {
    const double v = profile_loglik(r, k_lo * std::exp(step * i), log_k_coefficient);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = std::log(k_lo) + step * std::max(best - 1, 0);
  double b = std::log(k_lo) + step * std::min(best + 1, grid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = profile_loglik(r, std::exp(x1), log_k_coefficient);
  double f2 = profile_loglik(r, std::exp(x2), log_k_coefficient);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = profile_loglik(r, std::exp(x2), log_k_coefficient);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = profile_loglik(r, std::exp(x1), log_k_coefficient);
    }
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace weibias::oracle
