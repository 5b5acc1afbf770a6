#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trustlens/active.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/error.hpp"
#include "trustlens/features.hpp"
#include "trustlens/learners/classifier.hpp"
#include "trustlens/scoring.hpp"

namespace trustlens::config {

/// Settings shared by the CLI and the service. Keys are flat, dotted for
/// learner and service groups (`forest.n_trees`, `service.port`).
struct Config {
  std::string dataset;
  std::string seed_labels;
  std::string truth_labels;
  learners::LearnerParams learner;
  active::Strategy strategy = active::Strategy::margin;
  std::size_t batch_size = 100;
  scoring::ScoringOptions scoring;
  std::string mask = "paper_default";
  std::uint64_t seed = 0;
  std::uint32_t folds = 10;
  active::StopRule stop;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string state_dir;
  std::string ui_dir;
  std::uint32_t annotators = 2;

  active::LoopConfig loop() const {
    active::LoopConfig c;
    c.learner = learner;
    c.learner.with_seed(seed);
    c.strategy = strategy;
    c.mask = preprocess::parse_mask(mask);
    c.folds = folds;
    c.seed = seed;
    c.stop = stop;
    return c;
  }
};

namespace detail {

inline std::string as_string(const nlohmann::json& v, std::string_view key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw ValidationError("config key '" + std::string(key) + "' must be a string");
}

inline double as_double(const nlohmann::json& v, std::string_view key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const auto s = v.get<std::string>();
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("config key '" + std::string(key) + "' must be a number");
}

inline std::uint64_t as_uint(const nlohmann::json& v, std::string_view key) {
  const double d = as_double(v, key);
  if (d < 0 || d != std::floor(d)) throw ValidationError("config key '" + std::string(key) + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

inline std::vector<std::size_t> as_sizes(const nlohmann::json& v, std::string_view key) {
  std::vector<std::size_t> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(static_cast<std::size_t>(as_uint(e, key)));
    return out;
  }
  // "50" or "64,32"
  const auto s = as_string(v, key);
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!part.empty()) out.push_back(static_cast<std::size_t>(as_uint(nlohmann::json(part), key)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Key {
  const char* name;
  std::function<void(Config&, const nlohmann::json&)> set;
};

inline const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"dataset", [](Config& c, const nlohmann::json& v) { c.dataset = as_string(v, "dataset"); }},
      {"seed_labels", [](Config& c, const nlohmann::json& v) { c.seed_labels = as_string(v, "seed_labels"); }},
      {"truth_labels", [](Config& c, const nlohmann::json& v) { c.truth_labels = as_string(v, "truth_labels"); }},
      {"learner", [](Config& c, const nlohmann::json& v) { c.learner.kind = learner_from_string(as_string(v, "learner")); }},
      {"strategy", [](Config& c, const nlohmann::json& v) { c.strategy = active::strategy_from_string(as_string(v, "strategy")); }},
      {"batch_size", [](Config& c, const nlohmann::json& v) { c.batch_size = as_uint(v, "batch_size"); }},
      {"clip_percentile", [](Config& c, const nlohmann::json& v) { c.scoring.clip_percentile = as_double(v, "clip_percentile"); }},
      {"dead_zone", [](Config& c, const nlohmann::json& v) { c.scoring.dead_zone = as_double(v, "dead_zone"); }},
      {"denominator", [](Config& c, const nlohmann::json& v) { c.scoring.denominator = features::denominator_from_string(as_string(v, "denominator")); }},
      {"mask", [](Config& c, const nlohmann::json& v) { c.mask = as_string(v, "mask"); }},
      {"seed", [](Config& c, const nlohmann::json& v) { c.seed = as_uint(v, "seed"); }},
      {"folds", [](Config& c, const nlohmann::json& v) { c.folds = static_cast<std::uint32_t>(as_uint(v, "folds")); }},
      {"max_rounds", [](Config& c, const nlohmann::json& v) { c.stop.max_rounds = static_cast<std::uint32_t>(as_uint(v, "max_rounds")); }},
      {"min_gain", [](Config& c, const nlohmann::json& v) { c.stop.min_gain = as_double(v, "min_gain"); }},
      {"forest.n_trees", [](Config& c, const nlohmann::json& v) { c.learner.forest.n_trees = static_cast<std::uint32_t>(as_uint(v, "forest.n_trees")); }},
      {"forest.max_depth", [](Config& c, const nlohmann::json& v) { c.learner.forest.max_depth = static_cast<std::uint32_t>(as_uint(v, "forest.max_depth")); }},
      {"forest.max_features", [](Config& c, const nlohmann::json& v) { c.learner.forest.max_features = static_cast<std::uint32_t>(as_uint(v, "forest.max_features")); }},
      {"svm.c", [](Config& c, const nlohmann::json& v) { c.learner.svm.c = as_double(v, "svm.c"); }},
      {"svm.gamma", [](Config& c, const nlohmann::json& v) { c.learner.svm.gamma = as_double(v, "svm.gamma"); }},
      {"svm.kernel", [](Config& c, const nlohmann::json& v) {
         const auto s = as_string(v, "svm.kernel");
         if (s == "linear") c.learner.svm.kernel = learners::KernelKind::linear;
         else if (s == "rbf") c.learner.svm.kernel = learners::KernelKind::rbf;
         else throw ValidationError("unknown kernel '" + s + "'");
       }},
      {"mlp.hidden", [](Config& c, const nlohmann::json& v) { c.learner.mlp.hidden = as_sizes(v, "mlp.hidden"); }},
      {"mlp.activation", [](Config& c, const nlohmann::json& v) { c.learner.mlp.activation = learners::activation_from_string(as_string(v, "mlp.activation")); }},
      {"mlp.epochs", [](Config& c, const nlohmann::json& v) { c.learner.mlp.epochs = static_cast<std::uint32_t>(as_uint(v, "mlp.epochs")); }},
      {"mlp.lr", [](Config& c, const nlohmann::json& v) { c.learner.mlp.lr = as_double(v, "mlp.lr"); }},
      {"mlp.batch_size", [](Config& c, const nlohmann::json& v) { c.learner.mlp.batch_size = as_uint(v, "mlp.batch_size"); }},
      {"mlp.alpha", [](Config& c, const nlohmann::json& v) { c.learner.mlp.alpha = as_double(v, "mlp.alpha"); }},
      {"service.host", [](Config& c, const nlohmann::json& v) { c.host = as_string(v, "service.host"); }},
      {"service.port", [](Config& c, const nlohmann::json& v) { c.port = static_cast<int>(as_uint(v, "service.port")); }},
      {"service.state_dir", [](Config& c, const nlohmann::json& v) { c.state_dir = as_string(v, "service.state_dir"); }},
      {"service.ui_dir", [](Config& c, const nlohmann::json& v) { c.ui_dir = as_string(v, "service.ui_dir"); }},
      {"service.annotators", [](Config& c, const nlohmann::json& v) { c.annotators = static_cast<std::uint32_t>(as_uint(v, "service.annotators")); }},
  };
  return k;
}

inline void flatten(const nlohmann::json& j, const std::string& prefix, nlohmann::json& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const auto name = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (v.is_object()) flatten(v, name, out);
    else out[name] = v;
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline nlohmann::json toml_value(std::string_view raw, std::size_t line) {
  auto v = trim(raw);
  if (v.empty()) throw ParseError("toml: missing value", line);
  if (v.front() == '"' || v.front() == '\'') {
    const char q = v.front();
    const auto end = v.find(q, 1);
    if (end == std::string_view::npos) throw ParseError("toml: unterminated string", line);
    auto rest = trim(v.substr(end + 1));
    if (!rest.empty() && rest.front() != '#') throw ParseError("toml: trailing characters", line);
    return std::string(v.substr(1, end - 1));
  }
  if (const auto hash = v.find('#'); hash != std::string_view::npos) v = trim(v.substr(0, hash));
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    // numbers and arrays of numbers/strings share JSON syntax
    return nlohmann::json::parse(v);
  } catch (const nlohmann::json::exception&) {
    throw ParseError("toml: unsupported value '" + std::string(v) + "'", line);
  }
}

}  // namespace detail

/// Subset of TOML: `[section]` headers, `key = value` with strings, numbers,
/// booleans and single-line arrays, `#` comments.
inline nlohmann::json parse_toml(std::string_view text) {
  nlohmann::json out = nlohmann::json::object();
  std::string section;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) throw ParseError("toml: unterminated section header", lineno);
      section = std::string(detail::trim(line.substr(1, close - 1)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("toml: expected key = value", lineno);
    const auto key = std::string(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("toml: empty key", lineno);
    out[section.empty() ? key : section + "." + key] = detail::toml_value(line.substr(eq + 1), lineno);
  }
  return out;
}

/// Applies flat or nested settings. Unknown keys are rejected.
inline void apply_settings(Config& c, const nlohmann::json& settings) {
  nlohmann::json flat = nlohmann::json::object();
  detail::flatten(settings, "", flat);
  const auto& ks = detail::keys();
  for (auto e = flat.begin(); e != flat.end(); ++e) {
    const auto& k = e.key();
    auto it = std::find_if(ks.begin(), ks.end(), [&](const detail::Key& key) { return k == key.name; });
    if (it == ks.end()) throw ValidationError("unknown config key '" + k + "'");
    it->set(c, e.value());
  }
}

/// Environment name for a key: TRUSTLENS_ + upper case, dots as underscores.
inline std::string env_name(std::string_view key) {
  std::string s = "TRUSTLENS_";
  for (char ch : key) s += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

inline void apply_env(Config& c, const std::function<const char*(const char*)>& getenv = [](const char* n) {
  return std::getenv(n);
}) {
  for (const auto& k : detail::keys()) {
    if (const char* v = getenv(env_name(k.name).c_str())) k.set(c, nlohmann::json(std::string(v)));
  }
}

/// Reads a `.toml` or `.json` file.
inline Config load(const std::filesystem::path& path) {
  const auto text = trustlens::detail::read_file(path);
  nlohmann::json settings;
  if (path.extension() == ".toml") {
    settings = parse_toml(text);
  } else {
    try {
      settings = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config: ") + e.what(), 0);
    }
  }
  Config c;
  apply_settings(c, settings);
  return c;
}

}  // namespace trustlens::config
