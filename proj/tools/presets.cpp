#include <map>

#include "cli.hpp"

namespace specquant::cli {

namespace {

struct Preset {
  Command command;
  std::string text;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"table1", {Command::estimate, R"(# Raw estimates, four Gaussian models, 30 samples.
models: [WN, MA1(0.9), AR1(0.9), AR1(-0.9)]
p: [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
n: 30
replications: 100
kind: raw
base_seed: 1
)"}},
      {"table2", {Command::estimate, R"(# Raw estimates for white noise at growing sample sizes.
models: [WN]
p: [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
n: [30, 50, 100, 200]
replications: 100
kind: raw
base_seed: 2
)"}},
      {"table3", {Command::estimate, R"(# Raw estimates with the harmonic 0.5 cos(pi t / 2 + phi) added, 30 samples.
models:
  - WN+cos(0.5@pi/2)
  - MA1(0.9)+cos(0.5@pi/2)
  - AR1(0.9)+cos(0.5@pi/2)
  - AR1(-0.9)+cos(0.5@pi/2)
p: [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
n: 30
replications: 100
kind: raw
base_seed: 3
)"}},
      {"table4", {Command::power, R"(# Power of the smoothed quantile test at p = 0.7, 50 samples.
models: [WN, MA1(0.9), AR1(0.9), AR1(-0.9)]
p: 0.7
n: 50
replications: 100
alpha: 0.1
window: bartlett
m: auto
sigma_replications: 100
base_seed: 4
)"}},
      {"table5", {Command::power, R"(# Power of the smoothed quantile test at p = 0.8, 50 samples.
models: [WN, MA1(0.9), AR1(0.9), AR1(-0.9)]
p: 0.8
n: 50
replications: 100
alpha: 0.1
window: bartlett
m: auto
sigma_replications: 100
base_seed: 5
)"}},
      {"tn_variance", {Command::diagnose, R"(# Variance of n^beta times the periodogram integral over [lambda, lambda + n^-beta].
diagnostic: tn_variance
model: WN
lambda: pi/4
beta: [0.5, 1.0, 1.5]
n: [64, 128, 256, 512, 1024]
replications: 2000
base_seed: 6
)"}},
      {"raw_limit", {Command::diagnose, R"(# Sampling law of sqrt(n)(estimate - truth), raw against Bartlett-smoothed.
diagnostic: raw_limit
model: WN
p: 0.7
n: [30, 60, 120, 240, 480]
replications: 1000
base_seed: 7
)"}},
  };
  return table;
}

const Preset& lookup(const std::string& name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [key, _] : table) known += (known.empty() ? "" : ", ") + key;
    throw ArgumentError("unknown preset '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [key, _] : presets()) names.push_back(key);
  return names;
}

const std::string& preset_text(const std::string& name) { return lookup(name).text; }

Command preset_command(const std::string& name) { return lookup(name).command; }

}  // namespace specquant::cli
