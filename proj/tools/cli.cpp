#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "weibias/data_file.hpp"
#include "weibias/divergence.hpp"
#include "weibias/errors.hpp"
#include "weibias/estimators.hpp"
#include "weibias/simd/moments.hpp"
#include "weibias/simulation.hpp"

namespace weibias::cli {
namespace {

// Argument values that parse but violate a documented range.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> methods;
  for (const auto& name : names) {
    const auto m = parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "' (expected ML, ROSS, MLC or MMLE)");
    methods.push_back(*m);
  }
  return methods;
}

PPlugin parse_plugin(const std::string& name) {
  const auto plugin = parse_p_plugin(name);
  if (!plugin) throw UsageError("unknown p plug-in '" + name + "' (expected model or d_over_n)");
  return *plugin;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << contents;
}

struct FitArgs {
  std::string data;
  std::vector<std::string> methods;
  std::string p_plugin = "model";
  std::string csv;
};

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
  const CensoredSample sample = read_data_file(args.data);
  std::vector<Method> methods;
  if (args.methods.empty()) {
    methods = sample.is_complete()
                  ? std::vector<Method>{Method::ml, Method::ross, Method::mlc, Method::mmle}
                  : std::vector<Method>{Method::ml, Method::mlc, Method::mmle};
  } else {
    methods = parse_methods(args.methods);
  }
  FitOptions options;
  options.p_plugin = parse_plugin(args.p_plugin);

  std::ostringstream table;
  std::string csv = "method,k,lambda,p_hat,converged,iterations\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-6s %12s %12s %10s %10s %10s\n", "method", "k", "lambda",
                "p_hat", "converged", "iterations");
  table << line;

  int status = kExitOk;
  for (Method method : methods) {
    try {
      const auto r = fit(method, sample, options);
      const std::string p_hat = r.p_hat ? fmt("%.6g", *r.p_hat) : "";
      std::snprintf(line, sizeof(line), "%-6s %12.6g %12.6g %10s %10s %10d\n",
                    std::string(method_name(method)).c_str(), r.params.shape(), r.params.scale(),
                    p_hat.empty() ? "-" : p_hat.c_str(), r.converged ? "yes" : "no", r.iterations);
      table << line;
      csv += std::string(method_name(method)) + ',' + fmt("%.10g", r.params.shape()) + ',' +
             fmt("%.10g", r.params.scale()) + ',' + p_hat + ',' + (r.converged ? "1" : "0") + ',' +
             std::to_string(r.iterations) + '\n';
    } catch (const Error& e) {
      err << "error: " << method_name(method) << ": " << e.what() << '\n';
      status = kExitNumerical;
    }
  }
  out << "records=" << sample.size() << " events=" << sample.events();
  if (sample.censor_time()) out << " censor_time=" << fmt("%.6g", *sample.censor_time());
  if (!sample.is_complete()) out << " p_plugin=" << p_plugin_name(options.p_plugin);
  out << '\n' << table.str();
  if (!args.csv.empty()) write_file(args.csv, csv);
  return status;
}

struct SimulateArgs {
  std::string grid = "paper-complete";
  std::size_t replicates = 1000;
  std::uint64_t seed = 42;
  std::vector<std::size_t> n_values;
  std::vector<double> k_values;
  std::vector<double> p_values;
  std::vector<std::string> methods;
  std::string p_plugin = "model";
  std::size_t min_uncensored = 2;
  unsigned workers = 0;
  std::string out_path;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  SimulationConfig config;
  if (args.grid == "paper-complete") {
    config = reference_complete_grid();
  } else if (args.grid == "paper-censored") {
    config = reference_censored_grid();
  } else if (args.grid != "custom") {
    throw UsageError("unknown grid '" + args.grid + "'");
  }
  if (!args.n_values.empty()) config.n_values = args.n_values;
  if (!args.k_values.empty()) config.k_star_values = args.k_values;
  if (!args.p_values.empty()) config.p_values = args.p_values;
  if (!args.methods.empty()) config.methods = parse_methods(args.methods);
  config.replicates = args.replicates;
  config.master_seed = args.seed;
  config.p_plugin = parse_plugin(args.p_plugin);
  config.min_uncensored = args.min_uncensored;
  config.workers = args.workers;
  try {
    validate(config);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const auto report = run(config);
  const auto csv = to_csv(report);
  if (args.out_path.empty()) {
    out << csv;
  } else {
    write_file(args.out_path, csv);
    write_file(args.out_path + ".meta.json", metadata_json(report));
  }
  return kExitOk;
}

struct BiasCurveArgs {
  double k = 1.0;
  std::size_t n = 1;
  double p_min = 0.05;
  double p_max = 0.999;
  std::size_t steps = 100;
  std::string out_path;
};

int cmd_bias_curve(const BiasCurveArgs& args, std::ostream& out) {
  if (!(args.p_min > 0.0 && args.p_min < args.p_max && args.p_max < 1.0)) {
    throw UsageError("bias-curve needs 0 < p-min < p-max < 1");
  }
  if (args.steps < 2) throw UsageError("bias-curve needs at least 2 steps");
  if (!(args.k > 0.0) || args.n < 1) throw UsageError("bias-curve needs k > 0 and n >= 1");

  std::string csv = "p,f,bias_k,f1,f2\n";
  for (std::size_t i = 0; i < args.steps; ++i) {
    const double p = i + 1 == args.steps
                         ? args.p_max
                         : args.p_min + (args.p_max - args.p_min) * static_cast<double>(i) /
                                            static_cast<double>(args.steps - 1);
    const auto c = censored_bias_coefficients(p);
    csv += fmt("%.10g", p) + ',' + fmt("%.10g", c.f) + ',' +
           fmt("%.10g", args.k * c.f / static_cast<double>(args.n)) + ',' + fmt("%.10g", c.f1) +
           ',' + fmt("%.10g", c.f2) + '\n';
  }
  if (args.out_path.empty()) {
    out << csv;
  } else {
    write_file(args.out_path, csv);
  }
  return kExitOk;
}

struct KlArgs {
  double k0 = 1.0;
  double lambda0 = 1.0;
  double k1 = 1.0;
  double lambda1 = 1.0;
  std::optional<double> censor_time;
};

int cmd_kl(const KlArgs& args, std::ostream& out) {
  std::optional<KlInput> input;
  try {
    input = KlInput{WeibullParams(args.k0, args.lambda0), WeibullParams(args.k1, args.lambda1),
                    args.censor_time};
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (args.censor_time && !(*args.censor_time > 0.0)) {
    throw UsageError("censor time must be positive");
  }
  out << fmt("%.17g", kl_divergence(*input)) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weibull ML and bias-corrected estimation for complete and type I censored data",
               "weibias"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("weibias 1.0 (kernel: ") +
                                        std::string(simd::isa_name(simd::active_isa())) + ")");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit estimators to a data file");
  fit_cmd->add_option("data", fit_args.data, "Data file: value[,delta] per line")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--methods", fit_args.methods, "Comma-separated subset of ML,ROSS,MLC,MMLE")
      ->delimiter(',');
  fit_cmd->add_option("--p-plugin", fit_args.p_plugin,
                      "Uncensored-proportion estimate for censored MMLE: model or d_over_n")
      ->capture_default_str();
  fit_cmd->add_option("--csv", fit_args.csv, "Also write the estimates to this CSV file");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison of the estimators");
  sim_cmd->add_option("--grid", sim_args.grid, "paper-complete, paper-censored or custom")
      ->capture_default_str();
  sim_cmd->add_option("--replicates", sim_args.replicates)->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed)->capture_default_str();
  sim_cmd->add_option("--n", sim_args.n_values, "Sample sizes")->delimiter(',');
  sim_cmd->add_option("--k", sim_args.k_values, "True shapes k*")->delimiter(',');
  sim_cmd->add_option("--p", sim_args.p_values, "Uncensored proportions; 1 = complete")
      ->delimiter(',');
  sim_cmd->add_option("--methods", sim_args.methods, "Subset of ML,ROSS,MLC,MMLE")->delimiter(',');
  sim_cmd->add_option("--p-plugin", sim_args.p_plugin)->capture_default_str();
  sim_cmd->add_option("--min-uncensored", sim_args.min_uncensored)->capture_default_str();
  sim_cmd->add_option("--workers", sim_args.workers, "Threads; 0 = all cores")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_args.out_path, "CSV path (default: standard output)");

  BiasCurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("bias-curve", "Tabulate f(p), f1(p), f2(p) over a p grid");
  curve_cmd->add_option("--k", curve_args.k)->capture_default_str();
  curve_cmd->add_option("--n", curve_args.n)->capture_default_str();
  curve_cmd->add_option("--p-min", curve_args.p_min)->capture_default_str();
  curve_cmd->add_option("--p-max", curve_args.p_max)->capture_default_str();
  curve_cmd->add_option("--steps", curve_args.steps)->capture_default_str();
  curve_cmd->add_option("--out", curve_args.out_path);

  KlArgs kl_args;
  auto* kl_cmd = app.add_subcommand("kl", "KL divergence between two Weibull models");
  kl_cmd->add_option("--k0", kl_args.k0, "Generator shape")->required();
  kl_cmd->add_option("--lambda0", kl_args.lambda0, "Generator scale")->required();
  kl_cmd->add_option("--k1", kl_args.k1, "Candidate shape")->required();
  kl_cmd->add_option("--lambda1", kl_args.lambda1, "Candidate scale")->required();
  kl_cmd->add_option("--censor-time,-c", kl_args.censor_time, "Type I censoring time");

  std::vector<std::string> storage{"weibias"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_args, out, err);
    if (*sim_cmd) return cmd_simulate(sim_args, out);
    if (*curve_cmd) return cmd_bias_curve(curve_args, out);
    if (*kl_cmd) return cmd_kl(kl_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace weibias::cli
