#pragma once

// Monte Carlo comparison of shape estimators on Weibull(k*, 1) samples,
// complete or type I censored at the quantile giving an expected uncensored
// proportion p.
//
// Every replicate draws from its own substream keyed by
// (master seed, n, p, k*, replicate index), and per-replicate outcomes are
// reduced in index order, so reports do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "weibias/estimators.hpp"
#include "weibias/random.hpp"

namespace weibias {

struct SimulationConfig {
  std::vector<std::size_t> n_values;
  std::vector<double> k_star_values;
  std::vector<double> p_values;  // 1 means complete data
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 42;
  std::vector<Method> methods{Method::ml, Method::mlc, Method::mmle};
  // Samples with fewer events are redrawn and counted as discarded.
  std::size_t min_uncensored = 2;
  PPlugin p_plugin = PPlugin::model;
  unsigned workers = 1;  // 0: one per hardware thread
};

/// n in {10, 20, 50}, k* in {0.5, 1, 5, 10}, complete data.
SimulationConfig reference_complete_grid();
/// n in {10, 20, 30}, p in {0.3, 0.5, 0.7, 0.9}, k* in {0.5, 1, 5, 10}.
SimulationConfig reference_censored_grid();

/// Validates invariants; throws DomainError.
void validate(const SimulationConfig& config);

struct MethodSummary {
  Method method = Method::ml;
  double bias = 0.0;     // mean of k_hat - k*
  double mse = 0.0;      // mean of (k_hat - k*)^2
  double mean_kl = 0.0;  // mean KL(generator || fitted)
  double bias_se = 0.0;  // Monte Carlo standard errors
  double mse_se = 0.0;
  std::size_t used_replicates = 0;
  std::size_t discarded = 0;    // samples redrawn because d < min_uncensored
  std::size_t failed_fits = 0;  // excluded from bias, mse and mean_kl
  std::size_t kl_failures = 0;  // fits whose KL overflowed; excluded from mean_kl only
};

struct CellReport {
  std::size_t n = 0;
  double p = 1.0;
  double k_star = 1.0;
  std::vector<MethodSummary> methods;
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<CellReport> cells;
};

CellReport run_cell(const SimulationConfig& config, std::size_t n, double p, double k_star,
                    const RandomStream& root);

SimulationReport run(const SimulationConfig& config);

/// Header: n,p,k_star,method,bias,mse,mean_kl,used_replicates,discarded,failed_fits
std::string to_csv(const SimulationReport& report);

/// JSON object with the configuration and resampling policy.
std::string metadata_json(const SimulationReport& report);

}  // namespace weibias
