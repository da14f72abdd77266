#include "weibias/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "weibias/divergence.hpp"
#include "weibias/errors.hpp"

namespace weibias {

SimulationConfig reference_complete_grid() {
  SimulationConfig config;
  config.n_values = {10, 20, 50};
  config.k_star_values = {0.5, 1.0, 5.0, 10.0};
  config.p_values = {1.0};
  return config;
}

SimulationConfig reference_censored_grid() {
  SimulationConfig config;
  config.n_values = {10, 20, 30};
  config.k_star_values = {0.5, 1.0, 5.0, 10.0};
  config.p_values = {0.3, 0.5, 0.7, 0.9};
  return config;
}

void validate(const SimulationConfig& config) {
  if (config.replicates < 1) throw DomainError("simulation: replicates must be at least 1");
  if (config.n_values.empty() || config.k_star_values.empty() || config.p_values.empty() ||
      config.methods.empty()) {
    throw DomainError("simulation: every grid and the method list must be non-empty");
  }
  for (std::size_t n : config.n_values) {
    if (n < 2) throw DomainError("simulation: sample sizes must be at least 2");
  }
  for (double k : config.k_star_values) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("simulation: k* must be positive");
  }
  for (double p : config.p_values) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("simulation: p must lie in (0, 1]");
  }
}

namespace {

struct Outcome {
  double error = 0.0;
  double kl = 0.0;
  bool fitted = false;
  bool kl_ok = false;
};

struct ReplicateRecord {
  std::size_t discarded = 0;
};

bool applicable(Method method, bool censored) { return !(censored && method == Method::ross); }

}  // namespace

CellReport run_cell(const SimulationConfig& config, std::size_t n, double p, double k_star,
                    const RandomStream& root) {
  const bool censored = p < 1.0;
  std::vector<Method> methods;
  for (Method m : config.methods) {
    if (applicable(m, censored)) methods.push_back(m);
  }

  const WeibullParams generator(k_star, 1.0);
  const double c = censored ? censor_threshold_for_p(generator, p) : 0.0;
  const std::size_t reps = config.replicates;
  const std::size_t n_methods = methods.size();

  std::vector<Outcome> outcomes(reps * n_methods);
  std::vector<ReplicateRecord> records(reps);
  FitOptions options;
  options.p_plugin = config.p_plugin;

  auto run_replicate = [&](std::size_t r) {
    auto stream = root.substream({static_cast<std::uint64_t>(n), std::bit_cast<std::uint64_t>(p),
                                  std::bit_cast<std::uint64_t>(k_star),
                                  static_cast<std::uint64_t>(r)});
    CensoredSample data = sample(generator, n, stream);
    if (censored) {
      data = apply_censoring(data, c);
      while (data.events() < config.min_uncensored) {
        ++records[r].discarded;
        data = apply_censoring(sample(generator, n, stream), c);
      }
    }
    for (std::size_t m = 0; m < n_methods; ++m) {
      Outcome& out = outcomes[r * n_methods + m];
      try {
        const auto report = fit(methods[m], data, options);
        out.fitted = true;
        out.error = report.params.shape() - k_star;
        try {
          out.kl = censored ? kl_censored(generator, report.params, c)
                            : kl_complete(generator, report.params);
          out.kl_ok = std::isfinite(out.kl);
        } catch (const Error&) {
          out.kl_ok = false;
        }
      } catch (const Error&) {
        out.fitted = false;
      }
    }
  };

  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < reps; r += workers) run_replicate(r);
      });
    }
  }

  std::size_t discarded = 0;
  for (const auto& rec : records) discarded += rec.discarded;

  CellReport cell{n, p, k_star, {}};
  for (std::size_t m = 0; m < n_methods; ++m) {
    MethodSummary s;
    s.method = methods[m];
    s.used_replicates = reps;
    s.discarded = discarded;
    double sum_e = 0.0, sum_e2 = 0.0, sum_e4 = 0.0, sum_kl = 0.0;
    std::size_t fitted = 0, kl_count = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const Outcome& out = outcomes[r * n_methods + m];
      if (!out.fitted) {
        ++s.failed_fits;
        continue;
      }
      ++fitted;
      const double e2 = out.error * out.error;
      sum_e += out.error;
      sum_e2 += e2;
      sum_e4 += e2 * e2;
      if (out.kl_ok) {
        sum_kl += out.kl;
        ++kl_count;
      } else {
        ++s.kl_failures;
      }
    }
    if (fitted > 0) {
      const double count = static_cast<double>(fitted);
      s.bias = sum_e / count;
      s.mse = sum_e2 / count;
      if (fitted > 1) {
        const double var_e = std::max(s.mse - s.bias * s.bias, 0.0) * count / (count - 1.0);
        const double var_e2 = std::max(sum_e4 / count - s.mse * s.mse, 0.0) * count / (count - 1.0);
        s.bias_se = std::sqrt(var_e / count);
        s.mse_se = std::sqrt(var_e2 / count);
      }
    } else {
      s.bias = s.mse = std::nan("");
    }
    s.mean_kl = kl_count > 0 ? sum_kl / static_cast<double>(kl_count) : std::nan("");
    cell.methods.push_back(s);
  }
  return cell;
}

SimulationReport run(const SimulationConfig& config) {
  validate(config);
  const RandomStream root(config.master_seed);
  SimulationReport report{config, {}};
  for (std::size_t n : config.n_values) {
    for (double p : config.p_values) {
      for (double k : config.k_star_values) {
        report.cells.push_back(run_cell(config, n, p, k, root));
      }
    }
  }
  return report;
}

namespace {

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string to_csv(const SimulationReport& report) {
  std::string out = "n,p,k_star,method,bias,mse,mean_kl,used_replicates,discarded,failed_fits\n";
  for (const auto& cell : report.cells) {
    for (const auto& m : cell.methods) {
      out += std::to_string(cell.n) + ',' + format_g6(cell.p) + ',' + format_g6(cell.k_star) + ',' +
             std::string(method_name(m.method)) + ',' + format_g6(m.bias) + ',' + format_g6(m.mse) +
             ',' + format_g6(m.mean_kl) + ',' + std::to_string(m.used_replicates) + ',' +
             std::to_string(m.discarded) + ',' + std::to_string(m.failed_fits) + '\n';
    }
  }
  return out;
}

std::string metadata_json(const SimulationReport& report) {
  const auto& c = report.config;
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : c.methods) methods.push_back(std::string(method_name(m)));
  nlohmann::json meta = {
      {"master_seed", c.master_seed},
      {"replicates", c.replicates},
      {"n_values", c.n_values},
      {"k_star_values", c.k_star_values},
      {"p_values", c.p_values},
      {"lambda_star", 1.0},
      {"methods", methods},
      {"min_uncensored", c.min_uncensored},
      {"p_plugin", std::string(p_plugin_name(c.p_plugin))},
      {"discard_policy",
       "samples with fewer than min_uncensored events are redrawn from the same substream; "
       "'discarded' counts the redraws and every cell averages exactly 'replicates' samples"},
      {"kl_direction", "KL(generator || fitted)"},
  };
  return meta.dump(2) + "\n";
}

}  // namespace weibias
