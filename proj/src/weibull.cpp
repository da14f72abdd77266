#include "weibias/weibull.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "weibias/errors.hpp"

namespace weibias {
namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require_probability(double u, const char* who) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(std::string(who) + ": probability must lie in (0, 1)");
  }
}

}  // namespace

WeibullParams::WeibullParams(double shape, double scale) : shape_(shape), scale_(scale) {
  if (!positive_finite(shape) || !positive_finite(scale)) {
    throw DomainError("WeibullParams: shape and scale must be positive and finite");
  }
}

CensoredSample::CensoredSample(std::vector<double> values, std::vector<std::uint8_t> indicators,
                               std::optional<double> censor_time)
    : values_(std::move(values)), indicators_(std::move(indicators)), censor_time_(censor_time) {
  if (values_.empty()) throw DomainError("CensoredSample: at least one record is required");
  if (values_.size() != indicators_.size()) {
    throw DomainError("CensoredSample: values and indicators differ in length");
  }
  if (censor_time_ && !positive_finite(*censor_time_)) {
    throw DomainError("CensoredSample: censoring time must be positive and finite");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double y = values_[i];
    const std::uint8_t delta = indicators_[i];
    if (!positive_finite(y)) {
      throw DomainError("CensoredSample: record " + std::to_string(i + 1) +
                        " is not a positive finite value");
    }
    if (delta > 1) {
      throw DomainError("CensoredSample: indicator of record " + std::to_string(i + 1) +
                        " is not 0 or 1");
    }
    if (!censor_time_) {
      if (delta != 1) throw DomainError("CensoredSample: complete data cannot have censored records");
    } else if (delta == 0 && y != *censor_time_) {
      throw DomainError("CensoredSample: censored record " + std::to_string(i + 1) +
                        " does not sit at the censoring time");
    } else if (delta == 1 && y > *censor_time_) {
      throw DomainError("CensoredSample: event " + std::to_string(i + 1) +
                        " exceeds the censoring time");
    }
    events_ += delta;
  }
}

CensoredSample CensoredSample::complete(std::vector<double> values) {
  std::vector<std::uint8_t> indicators(values.size(), 1);
  return CensoredSample(std::move(values), std::move(indicators), std::nullopt);
}

CensoredSample CensoredSample::censored(std::vector<double> values,
                                        std::vector<std::uint8_t> indicators, double censor_time) {
  return CensoredSample(std::move(values), std::move(indicators), censor_time);
}

CensoredSample CensoredSample::rescaled(double s) const {
  if (!positive_finite(s)) throw DomainError("CensoredSample::rescaled: factor must be positive");
  std::vector<double> scaled(values_.begin(), values_.end());
  for (double& v : scaled) v *= s;
  if (!censor_time_) return complete(std::move(scaled));
  // Censored records must stay bit-identical to c.
  const double c = *censor_time_ * s;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    if (indicators_[i] == 0) scaled[i] = c;
  }
  return censored(std::move(scaled), indicators_, c);
}

double pdf(const WeibullParams& params, double y) {
  if (!(y > 0.0)) throw DomainError("pdf: y must be positive");
  const double k = params.shape();
  const double z = y / params.scale();
  return (k / params.scale()) * std::pow(z, k - 1.0) * std::exp(-std::pow(z, k));
}

double cdf(const WeibullParams& params, double y) {
  if (y <= 0.0) return 0.0;
  return -std::expm1(-std::pow(y / params.scale(), params.shape()));
}

double survival(const WeibullParams& params, double y) {
  if (y <= 0.0) return 1.0;
  return std::exp(-std::pow(y / params.scale(), params.shape()));
}

double quantile(const WeibullParams& params, double u) {
  require_probability(u, "quantile");
  return params.scale() * std::pow(-std::log1p(-u), 1.0 / params.shape());
}

double censor_threshold_for_p(const WeibullParams& params, double p) {
  require_probability(p, "censor_threshold_for_p");
  return quantile(params, p);
}

double uncensored_fraction(const WeibullParams& params, double c) { return cdf(params, c); }

CensoredSample sample(const WeibullParams& params, std::size_t n, RandomStream& stream) {
  if (n == 0) throw DomainError("sample: n must be at least 1");
  std::vector<double> values(n);
  for (double& v : values) v = quantile(params, stream.uniform_open());
  return CensoredSample::complete(std::move(values));
}

CensoredSample apply_censoring(const CensoredSample& sample, double c) {
  if (!positive_finite(c)) throw DomainError("apply_censoring: c must be positive and finite");
  std::vector<double> values(sample.values().begin(), sample.values().end());
  std::vector<std::uint8_t> indicators(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Ties at c are events.
    indicators[i] = values[i] <= c ? 1 : 0;
    if (!indicators[i]) values[i] = c;
  }
  return CensoredSample::censored(std::move(values), std::move(indicators), c);
}

double log_likelihood(const WeibullParams& params, const CensoredSample& sample) {
  const double k = params.shape();
  const double log_lambda = std::log(params.scale());
  const auto values = sample.values();
  const auto indicators = sample.indicators();
  double power_sum = 0.0;
  double log_event_sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double log_y = std::log(values[i]);
    power_sum += std::exp(k * (log_y - log_lambda));
    if (indicators[i]) log_event_sum += log_y;
  }
  const double d = static_cast<double>(sample.events());
  return d * (std::log(k) - k * log_lambda) - power_sum + (k - 1.0) * log_event_sum;
}

}  // namespace weibias
