#include "sskm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sskm/errors.hpp"

namespace sskm {

namespace {

using nlohmann::json;

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("expected a positive integer, got '" + std::string(text) + "'");
  return v;
}

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw ConfigError("'" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

std::string as_text(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

BetaSpec as_beta(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return BetaSpec::absolute(v.get<std::size_t>());
  if (v.is_string()) return BetaSpec::parse(v.get<std::string>());
  throw ConfigError("'" + key + "' must be an integer or one of m, m/2, m/4");
}

template <class T, class F>
std::vector<T> as_list(const json& v, const std::string& key, F&& element) {
  std::vector<T> out;
  if (!v.is_array()) {
    out.push_back(element(v, key));
    return out;
  }
  for (const auto& e : v) out.push_back(element(e, key));
  return out;
}

}  // namespace

BetaSpec BetaSpec::absolute(std::size_t beta) {
  if (beta < 1) throw ConfigError("beta must be at least 1");
  BetaSpec b;
  b.value_ = beta;
  b.relative_ = false;
  return b;
}

BetaSpec BetaSpec::fraction(std::size_t divisor) {
  if (divisor < 1) throw ConfigError("beta divisor must be at least 1");
  BetaSpec b;
  b.value_ = divisor;
  b.relative_ = true;
  return b;
}

BetaSpec BetaSpec::parse(std::string_view text) {
  if (text == "m") return fraction(1);
  if (text.rfind("m/", 0) == 0) return fraction(parse_count(text.substr(2)));
  return absolute(parse_count(text));
}

std::size_t BetaSpec::resolve(std::size_t m) const {
  const std::size_t b = relative_ ? m / value_ : value_;
  return std::clamp<std::size_t>(b, 1, std::max<std::size_t>(m, 1));
}

std::string BetaSpec::to_string() const {
  if (!relative_) return std::to_string(value_);
  return value_ == 1 ? "m" : "m/" + std::to_string(value_);
}

Method parse_method(std::string_view text) {
  if (text == "rk") return Method::RK;
  if (text == "srk") return Method::SRK;
  if (text == "sskm") return Method::SSKM;
  throw ConfigError("unknown method '" + std::string(text) + "' (expected rk, srk or sskm)");
}

StepMode parse_step_mode(std::string_view text) {
  if (text == "exact") return StepMode::Exact;
  if (text == "inexact") return StepMode::Inexact;
  throw ConfigError("unknown step '" + std::string(text) + "' (expected exact or inexact)");
}

void ExperimentConfig::validate() const {
  if (m < 1 || n < 1) throw ConfigError("m and n must be positive");
  if (k < 1 || k > n) throw InvalidSparsity("sparsity k must lie in [1, n]");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (!(noise >= 0.0)) throw ConfigError("noise must be nonnegative");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(mse_target >= 0.0)) throw ConfigError("mse_target must be nonnegative");
  if (steps.empty()) throw ConfigError("at least one step mode is required");
  if (methods.empty()) throw ConfigError("at least one method is required");
  for (double l : lambda_values)
    if (!(l >= 0.0)) throw ConfigError("lambda candidates must be nonnegative");
  for (std::size_t kv : k_values)
    if (kv < 1 || kv > n) throw InvalidSparsity("sparsity grid entries must lie in [1, n]");
  for (std::size_t mv : m_values)
    if (mv < 1) throw ConfigError("m grid entries must be positive");
}

ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig cfg) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, v] : doc.items()) {
    if (v.is_object()) throw ConfigError("'" + key + "' must not be a nested object");
    if (key == "m") cfg.m = as_count(v, key);
    else if (key == "n") cfg.n = as_count(v, key);
    else if (key == "k") cfg.k = as_count(v, key);
    else if (key == "lambda") cfg.lambda = as_real(v, key);
    else if (key == "beta") cfg.beta = as_beta(v, key);
    else if (key == "steps" || key == "step")
      cfg.steps = as_list<StepMode>(v, key, [](const json& e, const std::string& k) {
        return parse_step_mode(as_text(e, k));
      });
    else if (key == "methods" || key == "method")
      cfg.methods = as_list<Method>(v, key, [](const json& e, const std::string& k) {
        return parse_method(as_text(e, k));
      });
    else if (key == "noise") cfg.noise = as_real(v, key);
    else if (key == "trials") cfg.trials = as_count(v, key);
    else if (key == "seed") cfg.seed = as_count(v, key);
    else if (key == "mse_target") cfg.mse_target = as_real(v, key);
    else if (key == "max_iters") cfg.max_iters = as_count(v, key);
    else if (key == "trace_every") cfg.trace_every = as_count(v, key);
    else if (key == "out") cfg.out = as_text(v, key);
    else if (key == "m_values") cfg.m_values = as_list<std::size_t>(v, key, as_count);
    else if (key == "k_values") cfg.k_values = as_list<std::size_t>(v, key, as_count);
    else if (key == "lambda_values") cfg.lambda_values = as_list<double>(v, key, as_real);
    else if (key == "beta_values") cfg.beta_values = as_list<BetaSpec>(v, key, as_beta);
    else if (key == "matrices") cfg.matrices = as_list<std::string>(v, key, as_text);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace sskm
