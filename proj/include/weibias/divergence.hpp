#pragma once

#include <optional>

#include "weibias/weibull.hpp"

namespace weibias {

/// KL(generator || candidate). With a censoring time the divergence is taken
/// over the observable pair (min(T, c), [T <= c]).
struct KlInput {
  WeibullParams generator;
  WeibullParams candidate;
  std::optional<double> censor_time;
};

double kl_complete(const WeibullParams& generator, const WeibullParams& candidate);

/// Closed form with
///   A1 = log(k1/k0 c^(k1-k0) l0^k0 l1^-k1) + (c/l1)^k1 + 1
///   A2 = Gamma(k1/k0 + 1) - Gamma(k1/k0 + 1, (c/l0)^k0)
///   A3 = Ei(-(c/l0)^k0) - gamma.
/// A2 takes the generator's (c/l0)^k0: it is the truncated moment
/// E0[(Y/l1)^k1; Y <= c] divided by (l0/l1)^k1.
double kl_censored(const WeibullParams& generator, const WeibullParams& candidate,
                   double censor_time);

double kl_divergence(const KlInput& input);

}  // namespace weibias
