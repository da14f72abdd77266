#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "weibias/root_finding.hpp"
#include "weibias/weibull.hpp"

namespace weibias {

enum class Method { ml, ross, mlc, mmle };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

/// How the censored bias correction estimates the uncensored proportion p.
enum class PPlugin {
  model,     // p = 1 - exp(-(c / lambda_ML)^k_ML)
  d_over_n,  // p = d / n
};

std::string_view p_plugin_name(PPlugin plugin);
std::optional<PPlugin> parse_p_plugin(std::string_view name);

struct FitOptions {
  PPlugin p_plugin = PPlugin::model;
  RootOptions root{};
};

struct EstimatorReport {
  Method method;
  WeibullParams params;
  std::optional<double> p_hat;  // set only for MMLE on censored data
  int iterations = 0;
  bool converged = false;
};

/// First-order (Cox-Snell) bias of the ML estimates.
struct BiasAdjustment {
  double bias_k = 0.0;
  double bias_lambda = 0.0;
};

/// Shape score functions as functions of k. Both are strictly decreasing in k
/// for non-degenerate data.
///   ML:  d/k + sum delta_i log y_i - d sum y^k log y / sum y^k
///   MLC: same with d/k replaced by (n-2)/k (complete) or (d-1)/k (censored).
double ml_score(const CensoredSample& sample, double k);
double mlc_score(const CensoredSample& sample, double k);

/// lambda maximizing the likelihood for fixed k: ((1/d) sum y_i^k)^(1/k).
double profile_scale(const CensoredSample& sample, double k);

EstimatorReport fit_ml(const CensoredSample& sample, const FitOptions& options = {});
EstimatorReport fit_ross(const CensoredSample& sample, const FitOptions& options = {});
EstimatorReport fit_mlc(const CensoredSample& sample, const FitOptions& options = {});
EstimatorReport fit_mmle(const CensoredSample& sample, const FitOptions& options = {});

EstimatorReport fit(Method method, const CensoredSample& sample, const FitOptions& options = {});

namespace bias_constants {

/// 18 (pi^2 - 2 zeta(3)) / pi^4, about 1.3795.
double shape_complete();
/// 3 (gamma - 1)^2 / pi^2 + 1/2, about 0.5543.
double scale_complete_c1();
/// 36 (gamma - 1) zeta(3) / pi^4 + (15 - 12 gamma) / pi^2 - 1, about -0.3698.
double scale_complete_c2();

}  // namespace bias_constants

/// Coefficients of the censored-data bias as functions of the uncensored
/// proportion p:
///   Bias(k)      = k f(p) / n
///   Bias(lambda) = lambda (f1(p) / (n k^2) + f2(p) / (n k)).
struct CensoredBiasCoefficients {
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

CensoredBiasCoefficients censored_bias_coefficients(double p);

BiasAdjustment bias_complete(const WeibullParams& params, std::size_t n);
BiasAdjustment bias_censored(const WeibullParams& params, std::size_t n, double p);

}  // namespace weibias
