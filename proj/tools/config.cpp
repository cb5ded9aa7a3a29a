#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cli.hpp"
#include "specquant/model_io.hpp"
#include "specquant/spectral.hpp"

namespace specquant::cli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& message) {
  std::ostringstream msg;
  msg << "line " << node.Mark().line + 1 << ": " << key << ": " << message;
  throw ConfigError(msg.str());
}

std::optional<double> plain_number(const std::string& text) {
  const std::string s = strip(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double number(const YAML::Node& node, const std::string& key, bool angle = false) {
  if (!node.IsScalar()) fail(node, key, "expected a number");
  try {
    if (angle) return parse_angle(node.Scalar());
  } catch (const ArgumentError&) {
    fail(node, key, "expected a number or a multiple of pi, got '" + node.Scalar() + "'");
  }
  const auto v = plain_number(node.Scalar());
  if (!v || !std::isfinite(*v)) fail(node, key, "expected a number, got '" + node.Scalar() + "'");
  return *v;
}

std::uint64_t unsigned_integer(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key, "expected a non-negative integer");
  const std::string s = strip(node.Scalar());
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(node, key, "expected a non-negative integer, got '" + node.Scalar() + "'");
  }
  return v;
}

std::string text(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key, "expected a string");
  return node.Scalar();
}

// A scalar or a sequence of scalars.
std::vector<YAML::Node> items(const YAML::Node& node, const std::string& key) {
  std::vector<YAML::Node> out;
  if (node.IsScalar()) {
    out.push_back(node);
  } else if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(item);
  } else {
    fail(node, key, "expected a value or a list");
  }
  if (out.empty()) fail(node, key, "list must not be empty");
  return out;
}

nlohmann::json to_json(const YAML::Node& node) {
  if (node.IsMap()) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& kv : node) j[kv.first.Scalar()] = to_json(kv.second);
    return j;
  }
  if (node.IsSequence()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& item : node) j.push_back(to_json(item));
    return j;
  }
  if (node.IsScalar()) {
    try {
      return parse_angle(node.Scalar());
    } catch (const ArgumentError&) {
      return node.Scalar();
    }
  }
  return nullptr;
}

NamedModel model_entry(const YAML::Node& node, const std::string& key) {
  try {
    if (node.IsScalar()) {
      auto model = parse_model_tag(node.Scalar());
      return {model.tag(), model};
    }
    if (node.IsMap()) {
      auto model = model_from_json(to_json(node));
      std::string label = model.tag();
      if (node["label"]) label = text(node["label"], key + ".label");
      return {label, model};
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ArgumentError& e) {
    fail(node, key, e.what());
  }
  fail(node, key, "expected a model shorthand or a mapping with 'noise'");
}

const std::map<Command, std::set<std::string>>& allowed_keys() {
  static const std::map<Command, std::set<std::string>> keys{
      {Command::estimate, {"command", "models", "p", "n", "replications", "kind", "window", "m", "base_seed", "input"}},
      {Command::test, {"command", "model", "p", "window", "m", "alpha", "sigma_replications", "base_seed", "input"}},
      {Command::power,
       {"command", "models", "p", "n", "replications", "window", "m", "alpha", "sigma_replications", "base_seed"}},
      {Command::simulate, {"command", "model", "n", "replications", "base_seed"}},
      {Command::diagnose, {"command", "diagnostic", "model", "p", "n", "replications", "beta", "lambda", "base_seed"}},
  };
  return keys;
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::estimate: return "estimate";
    case Command::test: return "test";
    case Command::power: return "power";
    case Command::simulate: return "simulate";
    case Command::diagnose: return "diagnose";
  }
  return "?";
}

double parse_angle(const std::string& input) {
  const std::string s = lower(strip(input));
  if (const auto v = plain_number(s)) return *v;
  static const std::regex pattern(R"(^([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$)");
  std::smatch match;
  if (!std::regex_match(s, match, pattern)) throw ArgumentError("not a number or multiple of pi: '" + input + "'");
  double coeff = 1.0;
  const std::string c = match[1].str();
  if (c == "-") {
    coeff = -1.0;
  } else if (!c.empty() && c != "+") {
    coeff = *plain_number(c.front() == '+' ? c.substr(1) : c);
  }
  double divisor = 1.0;
  if (match[2].matched) divisor = *plain_number(match[2].str());
  if (divisor == 0.0) throw ArgumentError("division by zero in '" + input + "'");
  return coeff * kPi / divisor;
}

SpectralModel parse_model_tag(const std::string& input) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : input) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      parts.push_back(strip(current));
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(strip(current));

  static const std::regex noise_re(R"(^(wn|ma1|ar1)\s*(?:\(([^)]*)\))?$)", std::regex::icase);
  static const std::regex atom_re(R"(^cos\s*\(([^@]+)@([^)]+)\)$)", std::regex::icase);
  std::smatch match;
  if (!std::regex_match(parts.front(), match, noise_re)) {
    throw ArgumentError("unknown noise model '" + parts.front() + "' (expected WN, MA1(theta) or AR1(a))");
  }
  const std::string family = lower(match[1].str());
  std::vector<std::string> args;
  if (match[2].matched) {
    std::stringstream ss(match[2].str());
    std::string arg;
    while (std::getline(ss, arg, ',')) args.push_back(strip(arg));
  }
  double coeff = 0.0;
  double variance = 1.0;
  bool coeff_seen = false;
  for (const auto& arg : args) {
    if (lower(arg).starts_with("v=")) {
      variance = parse_angle(arg.substr(2));
    } else if (!coeff_seen && family != "wn") {
      coeff = parse_angle(arg);
      coeff_seen = true;
    } else {
      throw ArgumentError("unexpected argument '" + arg + "' in '" + parts.front() + "'");
    }
  }
  if (family != "wn" && !coeff_seen) throw ArgumentError("'" + parts.front() + "' needs a coefficient");

  NoiseSpec noise;
  if (family == "wn") noise = WhiteNoise{variance};
  if (family == "ma1") noise = Ma1{coeff, variance};
  if (family == "ar1") noise = Ar1{coeff, variance};

  std::vector<SinusoidAtom> atoms;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!std::regex_match(parts[i], match, atom_re)) {
      throw ArgumentError("unknown component '" + parts[i] + "' (expected cos(R@frequency))");
    }
    atoms.push_back({parse_angle(match[1].str()), parse_angle(match[2].str())});
  }
  return SpectralModel(noise, std::move(atoms));
}

ExperimentConfig parse_config(const std::string& source, Command command) {
  YAML::Node root;
  try {
    root = YAML::Load(source);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << "line " << e.mark.line + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  if (!root.IsMap()) throw ConfigError("line 1: expected a mapping of settings");

  const auto& keys = allowed_keys().at(command);
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    if (!keys.count(key)) fail(kv.first, key, "unknown setting for '" + to_string(command) + "'");
  }
  auto require = [&](const char* key) {
    if (!root[key]) throw ConfigError("line 1: " + std::string(key) + ": required setting is missing");
    return root[key];
  };

  ExperimentConfig cfg;
  cfg.command = command;

  if (root["command"]) {
    const auto node = root["command"];
    if (text(node, "command") != to_string(command)) {
      fail(node, "command", "config is for '" + node.Scalar() + "', not '" + to_string(command) + "'");
    }
  }

  if (keys.count("models") && (command == Command::power || root["models"])) {
    const auto node = require("models");
    if (!node.IsSequence() || node.size() == 0) fail(node, "models", "expected a non-empty list");
    for (std::size_t i = 0; i < node.size(); ++i) {
      cfg.models.push_back(model_entry(node[i], "models[" + std::to_string(i) + "]"));
    }
  }
  if (keys.count("model") && !keys.count("models")) cfg.models.push_back(model_entry(require("model"), "model"));

  if (root["p"]) {
    for (const auto& item : items(root["p"], "p")) {
      const double p = number(item, "p");
      if (!(p >= 0.0 && p <= 1.0)) fail(item, "p", "level must lie in [0, 1]");
      cfg.levels.push_back(p);
    }
    if ((command == Command::test || command == Command::diagnose) && cfg.levels.size() != 1) {
      fail(root["p"], "p", "expected a single level");
    }
  } else if (command == Command::test || command == Command::power || command == Command::estimate) {
    require("p");
  }

  if (root["n"]) {
    for (const auto& item : items(root["n"], "n")) {
      const auto n = unsigned_integer(item, "n");
      if (n < 2) fail(item, "n", "series length must be at least 2");
      cfg.sizes.push_back(static_cast<std::size_t>(n));
    }
    if (command == Command::simulate && cfg.sizes.size() != 1) fail(root["n"], "n", "expected a single length");
  } else if (command != Command::test && command != Command::estimate) {
    require("n");
  }

  if (root["replications"]) {
    const auto node = root["replications"];
    cfg.replications = unsigned_integer(node, "replications");
    const std::size_t minimum = command == Command::diagnose ? 2 : 1;
    if (cfg.replications < minimum) {
      fail(node, "replications", "must be at least " + std::to_string(minimum));
    }
  }
  if (root["sigma_replications"]) {
    const auto node = root["sigma_replications"];
    cfg.sigma_replications = unsigned_integer(node, "sigma_replications");
    if (cfg.sigma_replications < 2) fail(node, "sigma_replications", "must be at least 2");
  }
  if (root["kind"]) {
    cfg.kind = text(root["kind"], "kind");
    if (cfg.kind != "raw" && cfg.kind != "smoothed" && cfg.kind != "both") {
      fail(root["kind"], "kind", "expected raw, smoothed or both");
    }
  }
  if (root["window"]) {
    cfg.window = text(root["window"], "window");
    try {
      make_window(cfg.window, 1);
    } catch (const ArgumentError& e) {
      fail(root["window"], "window", e.what());
    }
  }
  if (root["m"]) {
    const auto node = root["m"];
    if (!(node.IsScalar() && lower(node.Scalar()) == "auto")) {
      const auto m = unsigned_integer(node, "m");
      if (m < 1) fail(node, "m", "bandwidth must be at least 1");
      cfg.m = static_cast<std::size_t>(m);
      for (std::size_t n : cfg.sizes) {
        if (*cfg.m >= n) fail(node, "m", "bandwidth m=" + std::to_string(m) + " must be smaller than n=" + std::to_string(n));
      }
    }
  }
  if (root["alpha"]) {
    cfg.alpha = number(root["alpha"], "alpha");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) fail(root["alpha"], "alpha", "must lie in (0, 1)");
  }
  if (root["base_seed"]) cfg.base_seed = unsigned_integer(root["base_seed"], "base_seed");
  if (root["input"]) cfg.input = text(root["input"], "input");

  if (command == Command::diagnose) {
    if (root["diagnostic"]) cfg.diagnostic = text(root["diagnostic"], "diagnostic");
    if (cfg.diagnostic != "tn_variance" && cfg.diagnostic != "raw_limit") {
      fail(root["diagnostic"], "diagnostic", "expected tn_variance or raw_limit");
    }
    if (cfg.diagnostic == "raw_limit") {
      if (cfg.levels.empty()) require("p");
      if (root["beta"]) fail(root["beta"], "beta", "only used by tn_variance");
    } else {
      for (const auto& item : items(require("beta"), "beta")) {
        const double beta = number(item, "beta");
        if (!(beta > 0.0)) fail(item, "beta", "must be positive");
        cfg.betas.push_back(beta);
      }
      if (root["lambda"]) cfg.lambda = number(root["lambda"], "lambda", true);
      const auto anchor = root["lambda"] ? root["lambda"] : root["beta"];
      for (std::size_t n : cfg.sizes) {
        for (double beta : cfg.betas) {
          const double width = std::pow(static_cast<double>(n), -beta);
          if (!(cfg.lambda > -kPi && cfg.lambda + width <= kPi)) {
            fail(anchor, "lambda", "interval [lambda, lambda + n^-beta] leaves [-pi, pi] at n=" + std::to_string(n));
          }
        }
      }
    }
  }
  return cfg;
}

}  // namespace specquant::cli
