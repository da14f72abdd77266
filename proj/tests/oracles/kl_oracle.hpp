#pragma once

// Test-only KL divergences between Weibull models by direct quadrature of
// the definition. Log densities are formed analytically so that the
// integrand stays finite where the densities underflow.

#include <cmath>
#include <limits>

#include "oracles/quadrature.hpp"

namespace weibias::oracle {

struct Model {
  double k;
  double lambda;
};

inline double log_density(const Model& m, double y) {
  const double r = y / m.lambda;
  return std::log(m.k / m.lambda) + (m.k - 1.0) * std::log(r) - std::pow(r, m.k);
}

inline double log_surv(const Model& m, double y) { return -std::pow(y / m.lambda, m.k); }

/// integral_0^upper p0 log(p0 / p1), split at the generator's scale.
inline double kl_density_part(const Model& m0, const Model& m1, double upper) {
  auto f = [&](double y) {
    const double l0 = log_density(m0, y);
    const double p0 = std::exp(l0);
    return p0 == 0.0 ? 0.0 : p0 * (l0 - log_density(m1, y));
  };
  const double split = std::min(m0.lambda, upper);
  const double head = integrate(f, 0.0, split, 1e-13);
  if (std::isinf(upper)) return head + integrate_to_infinity(f, split, 1e-13);
  return head + integrate(f, split, upper, 1e-13);
}

inline double kl_complete_quadrature(const Model& m0, const Model& m1) {
  return kl_density_part(m0, m1, std::numeric_limits<double>::infinity());
}

/// KL over (min(T, c), [T <= c]): the density part below c plus the point
/// mass S0(c) log(S0(c) / S1(c)).
inline double kl_censored_quadrature(const Model& m0, const Model& m1, double c) {
  const double ls0 = log_surv(m0, c);
  const double mass = std::exp(ls0) * (ls0 - log_surv(m1, c));
  return kl_density_part(m0, m1, c) + mass;
}

}  // namespace weibias::oracle
