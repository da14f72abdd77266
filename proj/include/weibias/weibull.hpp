#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "weibias/random.hpp"

namespace weibias {

/// Weibull shape k and scale lambda, both positive and finite.
class WeibullParams {
 public:
  WeibullParams(double shape, double scale);

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  friend bool operator==(const WeibullParams&, const WeibullParams&) = default;

 private:
  double shape_;
  double scale_;
};

/// Observations y_i with event indicators delta_i and, for type I censored
/// data, the common censoring time c. Immutable once built; the factories
/// validate every invariant.
///
/// Censored records carry y_i = c and delta_i = 0; events satisfy y_i <= c.
/// Without a censoring time all indicators are 1.
class CensoredSample {
 public:
  static CensoredSample complete(std::vector<double> values);
  static CensoredSample censored(std::vector<double> values, std::vector<std::uint8_t> indicators,
                                 double censor_time);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> indicators() const noexcept { return indicators_; }
  std::optional<double> censor_time() const noexcept { return censor_time_; }

  std::size_t size() const noexcept { return values_.size(); }
  /// Number of uncensored records d.
  std::size_t events() const noexcept { return events_; }
  bool is_complete() const noexcept { return !censor_time_.has_value(); }

  /// Same records with every value (and c) multiplied by s > 0.
  CensoredSample rescaled(double s) const;

 private:
  CensoredSample(std::vector<double> values, std::vector<std::uint8_t> indicators,
                 std::optional<double> censor_time);

  std::vector<double> values_;
  std::vector<std::uint8_t> indicators_;
  std::optional<double> censor_time_;
  std::size_t events_ = 0;
};

double pdf(const WeibullParams& params, double y);
double cdf(const WeibullParams& params, double y);
double survival(const WeibullParams& params, double y);
double quantile(const WeibullParams& params, double u);

/// Censoring time c with P(T <= c) = p.
double censor_threshold_for_p(const WeibullParams& params, double p);
/// P(T <= c), the expected proportion of uncensored records.
double uncensored_fraction(const WeibullParams& params, double c);

/// n independent draws by inverse-CDF sampling.
CensoredSample sample(const WeibullParams& params, std::size_t n, RandomStream& stream);

/// Type I censoring at c: y -> min(y, c), delta = [y <= c].
CensoredSample apply_censoring(const CensoredSample& sample, double c);

/// Log-likelihood of complete or type I censored data:
///   d log(k / lambda^k) - lambda^-k sum y_i^k + (k - 1) sum delta_i log y_i.
double log_likelihood(const WeibullParams& params, const CensoredSample& sample);

}  // namespace weibias
