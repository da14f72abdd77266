#include "weibias/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "weibias/errors.hpp"
#include "weibias/simd/moments.hpp"
#include "weibias/special_functions.hpp"

namespace weibias {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::ml:
      return "ML";
    case Method::ross:
      return "ROSS";
    case Method::mlc:
      return "MLC";
    case Method::mmle:
      return "MMLE";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::ml, Method::ross, Method::mlc, Method::mmle}) {
    const auto canonical = method_name(m);
    if (name.size() == canonical.size() &&
        std::equal(name.begin(), name.end(), canonical.begin(),
                   [](char a, char b) { return std::toupper(static_cast<unsigned char>(a)) == b; })) {
      return m;
    }
  }
  return std::nullopt;
}

std::string_view p_plugin_name(PPlugin plugin) {
  return plugin == PPlugin::model ? "model" : "d_over_n";
}

std::optional<PPlugin> parse_p_plugin(std::string_view name) {
  if (name == "model") return PPlugin::model;
  if (name == "d_over_n") return PPlugin::d_over_n;
  return std::nullopt;
}

namespace {

constexpr double kMinShape = 1e-6;
constexpr double kMaxShape = 1e6;

// Log-observations centred on the mean log event time and shifted by their
// maximum, so that the score reduces to
//   k g(k) / d = numerator / d - k m(k),
// where m(k) is the mean of x_i = log y_i - ref under weights y_i^k.
struct ScoreTerms {
  std::vector<double> shifted;  // t_i = x_i - x_max <= 0
  double ref = 0.0;             // mean log y over events
  double x_max = 0.0;
  double events = 0.0;
  double range = 0.0;  // x_max - x_min
};

ScoreTerms prepare(const CensoredSample& sample) {
  ScoreTerms terms;
  terms.events = static_cast<double>(sample.events());
  if (sample.events() == 0) return terms;
  const auto values = sample.values();
  const auto indicators = sample.indicators();
  std::vector<double> logs(values.size());
  double event_log_sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    logs[i] = std::log(values[i]);
    if (indicators[i]) event_log_sum += logs[i];
  }
  terms.ref = event_log_sum / terms.events;
  for (double& l : logs) l -= terms.ref;
  const auto [min_it, max_it] = std::minmax_element(logs.begin(), logs.end());
  terms.x_max = *max_it;
  terms.range = *max_it - *min_it;
  for (double& l : logs) l -= terms.x_max;
  terms.shifted = std::move(logs);
  return terms;
}

struct ScaledScore {
  double value;  // k g(k) / d
  double slope;  // derivative with respect to log k
};

ScaledScore scaled_score(const ScoreTerms& terms, double numerator, double k) {
  const auto m = simd::weighted_moments(terms.shifted, k);
  const double mean_t = m.sum_wt / m.sum_w;
  const double var = std::max(m.sum_wtt / m.sum_w - mean_t * mean_t, 0.0);
  const double mean_x = terms.x_max + mean_t;
  return {numerator / terms.events - k * mean_x, -k * (mean_x + k * var)};
}

double scale_at(const ScoreTerms& terms, double k) {
  const auto m = simd::weighted_moments(terms.shifted, k);
  return std::exp(terms.ref + terms.x_max + (std::log(m.sum_w) - std::log(terms.events)) / k);
}

void require_solvable(const ScoreTerms& terms, const char* who) {
  if (terms.events == 0.0) {
    throw NoSolutionError(std::string(who) + ": no uncensored observations");
  }
  if (terms.range == 0.0) {
    throw NoSolutionError(std::string(who) +
                          ": all observations are identical; the shape estimate diverges");
  }
}

double starting_shape(const CensoredSample& sample) {
  std::vector<double> logs;
  const auto values = sample.values();
  const auto indicators = sample.indicators();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (indicators[i]) logs.push_back(std::log(values[i]));
  }
  if (logs.size() < 2) return 1.0;
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
  double ss = 0.0;
  for (double l : logs) ss += (l - mean) * (l - mean);
  const double sd = std::sqrt(ss / (logs.size() - 1));
  if (!(sd > 0.0)) return 1.0;
  return std::clamp(1.2 / sd, kMinShape, kMaxShape);
}

struct ShapeSolution {
  double k;
  int iterations;
};

// Solves numerator/k + sum delta log y - d sum y^k log y / sum y^k = 0 in log k.
ShapeSolution solve_shape(const CensoredSample& sample, const ScoreTerms& terms, double numerator,
                          const RootOptions& options, const char* who) {
  auto f = [&](double u) {
    const auto s = scaled_score(terms, numerator, std::exp(u));
    return std::pair{s.value, s.slope};
  };
  const auto bracket = expand_decreasing_bracket(f, std::log(starting_shape(sample)), 1.0,
                                                 std::log(kMinShape), std::log(kMaxShape));
  if (!bracket) {
    throw NoSolutionError(std::string(who) + ": score has no root for shape in [1e-6, 1e6]");
  }
  const auto root = newton_bisect(f, *bracket, options);
  if (!root.converged) {
    throw ConvergenceError(std::string(who) + ": shape iteration did not converge", root.iterations,
                           root.residual);
  }
  return {std::exp(root.x), root.iterations};
}

double mlc_numerator(const CensoredSample& sample) {
  return sample.is_complete() ? static_cast<double>(sample.size()) - 2.0
                              : static_cast<double>(sample.events()) - 1.0;
}

void require_mlc(const CensoredSample& sample) {
  if (sample.is_complete() && sample.size() < 3) {
    throw PreconditionError("fit_mlc: complete data needs n >= 3");
  }
  if (!sample.is_complete() && sample.events() < 2) {
    throw PreconditionError("fit_mlc: censored data needs at least 2 uncensored observations (d = " +
                            std::to_string(sample.events()) + ")");
  }
}

}  // namespace

double ml_score(const CensoredSample& sample, double k) {
  const auto terms = prepare(sample);
  require_solvable(terms, "ml_score");
  return scaled_score(terms, terms.events, k).value * terms.events / k;
}

double mlc_score(const CensoredSample& sample, double k) {
  require_mlc(sample);
  const auto terms = prepare(sample);
  require_solvable(terms, "mlc_score");
  return scaled_score(terms, mlc_numerator(sample), k).value * terms.events / k;
}

double profile_scale(const CensoredSample& sample, double k) {
  if (!(k > 0.0)) throw DomainError("profile_scale: k must be positive");
  const auto terms = prepare(sample);
  if (terms.events == 0.0) throw NoSolutionError("profile_scale: no uncensored observations");
  return scale_at(terms, k);
}

EstimatorReport fit_ml(const CensoredSample& sample, const FitOptions& options) {
  if (sample.is_complete() && sample.size() < 2) {
    throw PreconditionError("fit_ml: complete data needs n >= 2");
  }
  const auto terms = prepare(sample);
  require_solvable(terms, "fit_ml");
  const auto solution = solve_shape(sample, terms, terms.events, options.root, "fit_ml");
  return {Method::ml, WeibullParams(solution.k, scale_at(terms, solution.k)), std::nullopt,
          solution.iterations, true};
}

EstimatorReport fit_ross(const CensoredSample& sample, const FitOptions& options) {
  if (!sample.is_complete()) {
    throw UnsupportedError("fit_ross: the Ross correction is only available for complete data");
  }
  const std::size_t n = sample.size();
  if (n < 3) throw PreconditionError("fit_ross: needs n >= 3");
  const auto ml = fit_ml(sample, options);
  const double k = (n - 2.0) / (n - 0.68) * ml.params.shape();
  return {Method::ross, WeibullParams(k, profile_scale(sample, k)), std::nullopt, ml.iterations,
          true};
}

EstimatorReport fit_mlc(const CensoredSample& sample, const FitOptions& options) {
  require_mlc(sample);
  const auto terms = prepare(sample);
  require_solvable(terms, "fit_mlc");
  const auto solution = solve_shape(sample, terms, mlc_numerator(sample), options.root, "fit_mlc");
  return {Method::mlc, WeibullParams(solution.k, scale_at(terms, solution.k)), std::nullopt,
          solution.iterations, true};
}

EstimatorReport fit_mmle(const CensoredSample& sample, const FitOptions& options) {
  const auto ml = fit_ml(sample, options);
  const std::size_t n = sample.size();
  std::optional<double> p_hat;
  BiasAdjustment bias;
  if (sample.is_complete()) {
    bias = bias_complete(ml.params, n);
  } else {
    const double p = options.p_plugin == PPlugin::model
                         ? uncensored_fraction(ml.params, *sample.censor_time())
                         : static_cast<double>(sample.events()) / static_cast<double>(n);
    p_hat = p;
    // p rounds to 1 only when censoring is negligible; use the limit.
    bias = p < 1.0 ? bias_censored(ml.params, n, p) : bias_complete(ml.params, n);
  }
  const double k = ml.params.shape() - bias.bias_k;
  const double lambda = ml.params.scale() - bias.bias_lambda;
  if (!(k > 0.0) || !(lambda > 0.0)) {
    throw CorrectionOvershootError("fit_mmle: bias correction exceeds the ML estimate (k_ML = " +
                                   std::to_string(ml.params.shape()) +
                                   ", bias_k = " + std::to_string(bias.bias_k) + ")");
  }
  return {Method::mmle, WeibullParams(k, lambda), p_hat, ml.iterations, true};
}

EstimatorReport fit(Method method, const CensoredSample& sample, const FitOptions& options) {
  switch (method) {
    case Method::ml:
      return fit_ml(sample, options);
    case Method::ross:
      return fit_ross(sample, options);
    case Method::mlc:
      return fit_mlc(sample, options);
    case Method::mmle:
      return fit_mmle(sample, options);
  }
  throw DomainError("fit: unknown method");
}

namespace bias_constants {

double shape_complete() {
  using namespace constants;
  return 18.0 * (pi * pi - 2.0 * zeta3) / (pi * pi * pi * pi);
}

double scale_complete_c1() {
  using namespace constants;
  const double g1 = euler_gamma - 1.0;
  return 3.0 * g1 * g1 / (pi * pi) + 0.5;
}

double scale_complete_c2() {
  using namespace constants;
  const double g1 = euler_gamma - 1.0;
  return 36.0 * g1 * zeta3 / (pi * pi * pi * pi) + (15.0 - 12.0 * euler_gamma) / (pi * pi) - 1.0;
}

}  // namespace bias_constants

CensoredBiasCoefficients censored_bias_coefficients(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("censored_bias_coefficients: p must lie in (0, 1)");
  }
  const double zc = -std::log1p(-p);
  const auto g = inc_gamma_derivs(zc);
  const double g1 = g[1];
  const double g2 = g[2];
  const double g3 = g[3];
  const double denom = g1 * g1 - g2 * p;
  if (std::abs(denom) < 1e-14) {
    throw SingularityError("censored_bias_coefficients: information matrix is singular at p = " +
                           std::to_string(p));
  }
  const double denom2 = 2.0 * denom * denom;
  CensoredBiasCoefficients c;
  c.f = (-3.0 * (2.0 * g1 + g2) * g1 * p + (6.0 * g2 + g3) * p * p + 2.0 * g1 * g1 * g1) / denom2;
  c.f1 = -(p + 2.0 * g1 + g2) / (2.0 * denom);
  c.f2 = ((5.0 * g2 + g3) * p * p + (-5.0 * g1 * g1 + (g2 + g3) * g1 - 2.0 * g2 * g2) * p +
          (g2 - 2.0 * g1) * g1 * g1) /
         denom2;
  return c;
}

BiasAdjustment bias_complete(const WeibullParams& params, std::size_t n) {
  if (n == 0) throw DomainError("bias_complete: n must be positive");
  const double k = params.shape();
  const double nn = static_cast<double>(n);
  return {k * bias_constants::shape_complete() / nn,
          params.scale() * (bias_constants::scale_complete_c1() / (nn * k * k) +
                            bias_constants::scale_complete_c2() / (nn * k))};
}

BiasAdjustment bias_censored(const WeibullParams& params, std::size_t n, double p) {
  if (n == 0) throw DomainError("bias_censored: n must be positive");
  const auto c = censored_bias_coefficients(p);
  const double k = params.shape();
  const double nn = static_cast<double>(n);
  return {k * c.f / nn, params.scale() * (c.f1 / (nn * k * k) + c.f2 / (nn * k))};
}

}  // namespace weibias
