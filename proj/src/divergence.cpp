#include "weibias/divergence.hpp"

#include <cmath>
#include <string>

#include "weibias/errors.hpp"
#include "weibias/special_functions.hpp"

namespace weibias {
namespace {

constexpr double kClampTolerance = 1e-10;
constexpr double kMaxExponent = 709.0;

double clamp_near_zero(double kl) { return (kl < 0.0 && kl > -kClampTolerance) ? 0.0 : kl; }

double checked_exp(double exponent, const char* who) {
  if (exponent > kMaxExponent || std::isnan(exponent)) {
    throw OverflowError(std::string(who) + ": (lambda0/lambda1)^k1 term overflows (log = " +
                        std::to_string(exponent) + ")");
  }
  return std::exp(exponent);
}

}  // namespace

double kl_complete(const WeibullParams& generator, const WeibullParams& candidate) {
  const double k0 = generator.shape();
  const double l0 = generator.scale();
  const double k1 = candidate.shape();
  const double l1 = candidate.scale();
  const double ratio = k1 / k0;
  // (l0/l1)^k1 (k1/k0) Gamma(k1/k0) = (l0/l1)^k1 Gamma(k1/k0 + 1)
  const double moment =
      checked_exp(k1 * std::log(l0 / l1) + log_gamma(ratio + 1.0), "kl_complete");
  const double kl = moment + (ratio - 1.0) * constants::euler_gamma + std::log(k0 / k1) +
                    k1 * std::log(l1 / l0) - 1.0;
  return clamp_near_zero(kl);
}

double kl_censored(const WeibullParams& generator, const WeibullParams& candidate,
                   double censor_time) {
  if (!(censor_time > 0.0) || !std::isfinite(censor_time)) {
    throw DomainError("kl_censored: censoring time must be positive and finite");
  }
  const double k0 = generator.shape();
  const double l0 = generator.scale();
  const double k1 = candidate.shape();
  const double l1 = candidate.scale();
  const double c = censor_time;
  const double ratio = k1 / k0;
  const double log_c = std::log(c);

  const double z0 = std::pow(c / l0, k0);
  const double survival0 = std::exp(-z0);

  // exp(-z0) A1, with the (c/l1)^k1 part folded into a single exponential so
  // that a vanishing survival never multiplies an overflowing power.
  double censored_part = 0.0;
  if (survival0 > 0.0) {
    const double log_part =
        std::log(ratio) + (k1 - k0) * log_c + k0 * std::log(l0) - k1 * std::log(l1);
    censored_part = survival0 * (log_part + 1.0) + std::exp(-z0 + k1 * (log_c - std::log(l1)));
  }

  // (l0/l1)^k1 A2 with A2 = Gamma(s) - Gamma(s, z0) = gamma(s, z0), s = k1/k0 + 1.
  const double a2 = lower_inc_gamma(ratio + 1.0, z0);
  const double moment_part =
      a2 > 0.0 ? checked_exp(k1 * std::log(l0 / l1) + std::log(a2), "kl_censored") : 0.0;

  const double a3 = exp_integral_ei(-z0) - constants::euler_gamma;

  const double kl = censored_part + moment_part + (1.0 - ratio) * a3 + std::log(k0 / k1) +
                    k1 * std::log(l1 / l0) - 1.0;
  return clamp_near_zero(kl);
}

double kl_divergence(const KlInput& input) {
  if (input.censor_time) return kl_censored(input.generator, input.candidate, *input.censor_time);
  return kl_complete(input.generator, input.candidate);
}

}  // namespace weibias
