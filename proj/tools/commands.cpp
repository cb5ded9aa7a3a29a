#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "specquant/inference.hpp"
#include "specquant/parallel.hpp"
#include "specquant/quantile.hpp"
#include "specquant/sample.hpp"
#include "specquant/spectral.hpp"
#include "specquant/stats.hpp"

namespace specquant::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

template <class T, class F>
std::string joined(const std::vector<T>& xs, F&& f, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + f(x);
  return out;
}

void echo_config(std::ostream& out, const ExperimentConfig& cfg, const std::string& origin) {
  const Command c = cfg.command;
  out << "# specquant " << to_string(c) << '\n';
  out << "# source: " << origin << '\n';
  if (c == Command::estimate || c == Command::power) {
    if (!cfg.models.empty()) {
      out << "# models: " << joined(cfg.models, [](const NamedModel& m) { return m.label; }, "; ") << '\n';
    }
  } else {
    out << "# model: " << cfg.models.front().label << '\n';
  }
  if (c == Command::diagnose) out << "# diagnostic: " << cfg.diagnostic << '\n';
  if (!cfg.levels.empty()) out << "# p: " << joined(cfg.levels, num) << '\n';
  if (!cfg.sizes.empty()) {
    out << "# n: " << joined(cfg.sizes, [](std::size_t n) { return std::to_string(n); }) << '\n';
  }
  if (c != Command::test) out << "# replications: " << cfg.replications << '\n';
  if (c == Command::estimate) out << "# kind: " << cfg.kind << '\n';
  if (c == Command::estimate || c == Command::test || c == Command::power) {
    out << "# window: " << cfg.window << '\n';
    out << "# m: " << (cfg.m ? std::to_string(*cfg.m) : "auto") << '\n';
  }
  if (c == Command::test || c == Command::power) {
    out << "# alpha: " << num(cfg.alpha) << '\n';
    out << "# sigma_replications: " << cfg.sigma_replications << '\n';
  }
  if (c == Command::diagnose && cfg.diagnostic == "tn_variance") {
    out << "# beta: " << joined(cfg.betas, num) << '\n';
    out << "# lambda: " << num(cfg.lambda) << '\n';
  }
  if (!cfg.input.empty()) out << "# input: " << cfg.input << '\n';
  out << "# base_seed: " << cfg.base_seed << '\n';
}

TimeSeries load_series(const std::string& path) {
  if (path.empty()) throw ArgumentError("no input series given (use --input or the 'input' setting)");
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open input series '" + path + "'");
  try {
    return read_series_csv(in);
  } catch (const ArgumentError& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

std::size_t bandwidth_for(const ExperimentConfig& cfg, std::size_t n) {
  const std::size_t m = cfg.m.value_or(default_bandwidth(n));
  if (m >= n) {
    throw ArgumentError("bandwidth m=" + std::to_string(m) + " must be smaller than the series length n=" +
                        std::to_string(n));
  }
  return m;
}

std::vector<EstimateKind> kinds_of(const ExperimentConfig& cfg) {
  if (cfg.kind == "raw") return {EstimateKind::raw};
  if (cfg.kind == "smoothed") return {EstimateKind::smoothed};
  return {EstimateKind::raw, EstimateKind::smoothed};
}

Periodogram periodogram_for(EstimateKind kind, std::span<const double> x, const ExperimentConfig& cfg) {
  const auto grid = symmetric_grid(x.size());
  if (kind == EstimateKind::raw) return raw_periodogram(x, grid);
  return smoothed_density(x, make_window(cfg.window, bandwidth_for(cfg, x.size())), grid);
}

int cmd_estimate(const ExperimentConfig& cfg, std::ostream& out) {
  if (!cfg.input.empty()) {
    const auto series = load_series(cfg.input);
    for (auto kind : kinds_of(cfg)) {
      if (kind == EstimateKind::smoothed) bandwidth_for(cfg, series.size());
    }
    write_estimate_csv_header(out);
    for (auto kind : kinds_of(cfg)) {
      const auto pgram = periodogram_for(kind, series.values, cfg);
      for (const auto& e : estimate_from_periodogram(pgram, cfg.levels)) write_estimate_csv_row(out, e, series.seed);
    }
    return kExitOk;
  }

  for (std::size_t n : cfg.sizes) {
    if (cfg.kind != "raw") bandwidth_for(cfg, n);
  }
  out << "model,kind,n,m,p,single,mean,sd,replications,cell_seed\n";
  for (const auto& [label, model] : cfg.models) {
    for (std::size_t n : cfg.sizes) {
      const std::uint64_t cell_seed = stream_seed(cfg.base_seed, n);
      for (auto kind : kinds_of(cfg)) {
        std::vector<std::vector<double>> by_level(cfg.levels.size(), std::vector<double>(cfg.replications));
        parallel_for(cfg.replications, [&](std::size_t k) {
          const auto series = generate(model, n, replicate_seed(cell_seed, k));
          const auto estimates = estimate_from_periodogram(periodogram_for(kind, series.values, cfg), cfg.levels);
          for (std::size_t q = 0; q < estimates.size(); ++q) by_level[q][k] = estimates[q].lambda_hat;
        });
        const std::string m = kind == EstimateKind::smoothed ? std::to_string(bandwidth_for(cfg, n)) : "";
        for (std::size_t q = 0; q < cfg.levels.size(); ++q) {
          const auto& values = by_level[q];
          out << csv_field(label) << ',' << to_string(kind) << ',' << n << ',' << m << ',' << num(cfg.levels[q])
              << ',' << num(values.front()) << ',' << num(mean(values)) << ','
              << (values.size() > 1 ? num(sample_sd(values)) : "") << ',' << cfg.replications << ','
              << cell_seed << '\n';
        }
      }
    }
  }
  return kExitOk;
}

int cmd_test(const ExperimentConfig& cfg, std::ostream& out) {
  const auto series = load_series(cfg.input);
  const std::size_t n = series.size();
  const auto window = make_window(cfg.window, bandwidth_for(cfg, n));
  const auto& null_model = cfg.models.front().model;
  const double p = cfg.levels.front();
  const auto sigma = mc_sigma(null_model, p, n, window, cfg.sigma_replications, cfg.base_seed);
  const auto r = quantile_test(series.values, p, null_model, window, cfg.alpha, sigma);

  out << "field,value\n";
  out << "statistic," << num(r.statistic) << '\n';
  out << "critical," << num(r.critical) << '\n';
  out << "alpha," << num(r.alpha) << '\n';
  out << "reject," << (r.reject ? "true" : "false") << '\n';
  out << "p," << num(r.p_quantile) << '\n';
  out << "lambda_null," << num(r.lambda_null) << '\n';
  out << "lambda_hat," << num(r.lambda_hat) << '\n';
  out << "sigma," << num(r.sigma_used.sigma) << '\n';
  out << "sigma_method," << to_string(r.sigma_used.method) << '\n';
  out << "sigma_replications," << r.sigma_used.replications << '\n';
  out << "sigma_degenerate," << (r.sigma_used.degenerate ? "true" : "false") << '\n';
  out << "n," << n << '\n';
  out << "m," << window.bandwidth() << '\n';
  return r.reject ? kExitRejected : kExitOk;
}

int cmd_power(const ExperimentConfig& cfg, std::ostream& out) {
  for (std::size_t n : cfg.sizes) bandwidth_for(cfg, n);
  out << "p,n,null";
  for (const auto& m : cfg.models) out << ',' << csv_field(m.label);
  out << '\n';
  const std::size_t count = cfg.models.size();
  std::uint64_t cell = 0;
  for (double p : cfg.levels) {
    for (std::size_t n : cfg.sizes) {
      PowerStudyOptions options;
      options.window = cfg.window;
      options.m = bandwidth_for(cfg, n);
      options.sigma_replications = cfg.sigma_replications;
      for (std::size_t i = 0; i < count; ++i) {
        out << num(p) << ',' << n << ',' << csv_field(cfg.models[i].label);
        for (std::size_t j = 0; j < count; ++j, ++cell) {
          if (i == j) {
            out << ",--";
            continue;
          }
          const double power = power_study(cfg.models[i].model, cfg.models[j].model, p, n, cfg.alpha,
                                           cfg.replications, stream_seed(cfg.base_seed, cell), options);
          out << ',' << num(power);
        }
        out << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const auto& model = cfg.models.front().model;
  const std::size_t n = cfg.sizes.front();
  const auto batch = generate_batch({model, n, cfg.replications, cfg.base_seed});
  if (batch.size() == 1) {
    write_series_csv(out, batch.front());
    return kExitOk;
  }
  out << "replicate,seed,t,value\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      out << k << ',' << batch[k].seed << ',' << t + 1 << ',' << batch[k].values[t] << '\n';
    }
  }
  return kExitOk;
}

int cmd_diagnose(const ExperimentConfig& cfg, std::ostream& out) {
  const auto& model = cfg.models.front().model;
  if (cfg.diagnostic == "tn_variance") {
    const double f = spectral_density(model, cfg.lambda);
    out << "n,beta,variance,replications,f_squared\n";
    for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
      const auto rows = tn_variance_diagnostic(model, cfg.lambda, cfg.betas[b], cfg.sizes, cfg.replications,
                                               stream_seed(cfg.base_seed, b));
      for (const auto& row : rows) {
        out << row.n << ',' << num(row.beta) << ',' << num(row.variance) << ',' << row.replications << ','
            << num(f * f) << '\n';
      }
    }
    return kExitOk;
  }
  const auto rows = raw_limit_diagnostic(model, cfg.levels.front(), cfg.sizes, cfg.replications, cfg.base_seed);
  out << "n,kind,m,count,mean,sd,median,skewness,excess_kurtosis,jarque_bera,jarque_bera_p_value,"
         "normality_rejected_1pct\n";
  for (const auto& row : rows) {
    const auto& s = row.summary;
    out << row.n << ',' << to_string(row.kind) << ',' << (row.kind == EstimateKind::smoothed ? std::to_string(row.m) : "")
        << ',' << s.count << ',' << num(s.mean) << ',' << num(s.sd) << ',' << num(s.median) << ',' << num(s.skewness)
        << ',' << num(s.excess_kurtosis) << ',' << num(s.jarque_bera) << ',' << num(s.jarque_bera_p_value) << ','
        << (row.normality_rejected_1pct ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int dispatch(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::estimate: return cmd_estimate(cfg, out);
    case Command::test: return cmd_test(cfg, out);
    case Command::power: return cmd_power(cfg, out);
    case Command::simulate: return cmd_simulate(cfg, out);
    case Command::diagnose: return cmd_diagnose(cfg, out);
  }
  return kExitError;
}

struct Invocation {
  std::string config;
  std::string preset;
  std::string out;
  std::string input;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantiles of the spectral distribution function and the frequency-domain quantile test",
               "specquant"};
  app.require_subcommand(0, 1);
  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "Print the shipped preset names");

  Invocation inv;
  std::map<CLI::App*, Command> commands;
  std::map<Command, std::pair<CLI::Option*, CLI::Option*>> overrides;
  const std::pair<Command, const char*> specs[] = {
      {Command::estimate, "Estimate spectral quantiles over simulated replicates or an input series"},
      {Command::test, "Test a series against the quantile of a null model"},
      {Command::power, "Rejection-rate matrix over null and alternative models"},
      {Command::simulate, "Simulate series from a model"},
      {Command::diagnose, "Asymptotic diagnostics (tn_variance, raw_limit)"},
  };
  for (const auto& [command, description] : specs) {
    auto* sub = app.add_subcommand(to_string(command), description);
    auto* config = sub->add_option("--config", inv.config, "YAML or JSON experiment config");
    auto* preset = sub->add_option("--preset", inv.preset, "Shipped preset name");
    config->excludes(preset);
    sub->add_option("--out", inv.out, "Write CSV here instead of stdout");
    auto* seed = sub->add_option("--seed", inv.seed, "Override base_seed");
    auto* threads = sub->add_option("--threads", inv.threads, "Worker threads (fallback: SPECQUANT_THREADS)")
                        ->check(CLI::PositiveNumber);
    if (command == Command::test || command == Command::estimate) {
      sub->add_option("--input", inv.input, "Series CSV with a 'value' column");
    }
    commands[sub] = command;
    overrides[command] = {seed, threads};
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  if (list_presets) {
    for (const auto& name : preset_names()) out << name << ' ' << to_string(preset_command(name)) << '\n';
    return kExitOk;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return kExitError;
  }
  const Command command = commands.at(chosen.front());

  std::string origin;
  try {
    std::string text;
    if (!inv.preset.empty()) {
      origin = "preset " + inv.preset;
      text = preset_text(inv.preset);
      if (preset_command(inv.preset) != command) {
        throw ArgumentError("preset '" + inv.preset + "' is for '" + to_string(preset_command(inv.preset)) +
                            "', not '" + to_string(command) + "'");
      }
    } else if (!inv.config.empty()) {
      origin = inv.config;
      std::ifstream in(inv.config);
      if (!in) throw ArgumentError("cannot open config '" + inv.config + "'");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
    } else {
      throw ArgumentError("either --config or --preset is required");
    }

    auto cfg = parse_config(text, command);
    if (!inv.input.empty()) cfg.input = inv.input;
    if (command == Command::estimate && cfg.input.empty()) {
      if (cfg.models.empty()) throw ConfigError("line 1: models: required setting is missing (or pass --input)");
      if (cfg.sizes.empty()) throw ConfigError("line 1: n: required setting is missing (or pass --input)");
    }
    if (*overrides[command].first) cfg.base_seed = inv.seed;
    if (*overrides[command].second) set_thread_count(inv.threads);

    std::ofstream file;
    if (!inv.out.empty()) {
      file.open(inv.out);
      if (!file) throw ArgumentError("cannot write '" + inv.out + "'");
    }
    // Render into a buffer so a failed run leaves no partial table behind.
    std::ostringstream buffer;
    echo_config(buffer, cfg, origin);
    const int code = dispatch(cfg, buffer);
    (inv.out.empty() ? out : file) << buffer.str();
    return code;
  } catch (const ConfigError& e) {
    err << "specquant: " << origin << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "specquant: error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace specquant::cli
