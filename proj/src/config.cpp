#include "bmc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bmc {

namespace {

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "multi_gbm") return ModelKind::MultiGbm;
  if (s == "asian_gbm") return ModelKind::AsianGbm;
  if (s == "window_gbm") return ModelKind::WindowGbm;
  if (s == "svsi") return ModelKind::Svsi;
  throw std::invalid_argument("unknown model kind: " + s);
}

Numeraire numeraire_from_string(const std::string& s) {
  if (s == "bank") return Numeraire::Bank;
  if (s == "stock") return Numeraire::Stock;
  throw std::invalid_argument("unknown numeraire: " + s);
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

} // namespace

void ExperimentConfig::validate() const {
  model.validate();
  reward.validate();
  if (grid.n_times < 2) throw std::invalid_argument("config: grid.n_times must be >= 2");
  if (!(grid.horizon > 0.0)) throw std::invalid_argument("config: grid.horizon must be > 0");
  if (grid.lockout < 0.0 || grid.lockout >= grid.horizon)
    throw std::invalid_argument("config: grid.lockout outside [0, horizon)");
  if (!(scale > 0.0 && scale <= 10.0))
    throw std::invalid_argument("config: scale must lie in (0, 10]");
  if (sizes.n_bins < 2 || sizes.n_block < 1 || sizes.n_primal < 1 || sizes.n_dual < 1 ||
      sizes.n_sub < 1)
    throw std::invalid_argument("config: all simulation sizes must be positive");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

SizesConfig ExperimentConfig::scaled_sizes() const {
  SizesConfig s = sizes;
  const double rs = std::sqrt(scale);
  auto mul = [](std::size_t v, double f) {
    const long long r = std::llround(static_cast<double>(v) * f);
    return static_cast<std::size_t>(r < 1 ? 1 : r);
  };
  s.n_block = static_cast<int>(mul(static_cast<std::size_t>(sizes.n_block), scale));
  s.n_primal = mul(sizes.n_primal, scale);
  s.n_dual = mul(sizes.n_dual, scale);
  s.n_bins = std::max(10, static_cast<int>(std::llround(sizes.n_bins * rs)));
  s.n_sub = std::max<std::size_t>(10, mul(sizes.n_sub, rs));
  return s;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.example = get_or<std::string>(j, "example", "experiment");
  cfg.params = get_or<std::string>(j, "params", "");

  const nlohmann::json& jm = j.at("model");
  ModelSpec& m = cfg.model;
  m.kind = model_kind_from_string(jm.at("kind").get<std::string>());
  m.dim = get_or<int>(jm, "dim", 1);
  if (jm.contains("s0")) {
    if (jm.at("s0").is_array())
      m.s0 = jm.at("s0").get<std::vector<double>>();
    else
      m.s0 = {jm.at("s0").get<double>()};
  }
  m.rate = get_or<double>(jm, "rate", 0.0);
  m.div_yield = get_or<double>(jm, "div_yield", 0.0);
  m.vol = get_or<double>(jm, "vol", 0.0);
  m.corr = get_or<double>(jm, "corr", 0.0);
  if (jm.contains("sigma")) {
    const auto rows = jm.at("sigma").get<std::vector<std::vector<double>>>();
    m.sigma.clear();
    for (const auto& r : rows) m.sigma.insert(m.sigma.end(), r.begin(), r.end());
  }
  if (jm.contains("asian")) {
    const nlohmann::json& ja = jm.at("asian");
    m.asian.delta = get_or<double>(ja, "delta", m.asian.delta);
    m.asian.a0 = get_or<double>(ja, "a0", -1.0);
  }
  if (jm.contains("window")) m.window.lags = jm.at("window").at("lags").get<int>();
  if (jm.contains("svsi")) {
    const nlohmann::json& js = jm.at("svsi");
    SvsiParams& p = m.svsi;
    p.rho_s = get_or<double>(js, "rho_s", p.rho_s);
    p.rho_xi = get_or<double>(js, "rho_xi", p.rho_xi);
    p.rho_r = get_or<double>(js, "rho_r", p.rho_r);
    p.sigma_bar = get_or<double>(js, "sigma_bar", p.sigma_bar);
    p.r_bar = get_or<double>(js, "r_bar", p.r_bar);
    p.beta_xi = get_or<double>(js, "beta_xi", p.beta_xi);
    p.sigma_xi = get_or<double>(js, "sigma_xi", p.sigma_xi);
    p.beta_r = get_or<double>(js, "beta_r", p.beta_r);
    p.sigma_r = get_or<double>(js, "sigma_r", p.sigma_r);
    p.sigma0 = get_or<double>(js, "sigma0", p.sigma0);
    p.r0 = get_or<double>(js, "r0", p.r0);
    p.vol_stochastic = get_or<bool>(js, "vol_stochastic", true);
    p.rate_stochastic = get_or<bool>(js, "rate_stochastic", true);
  }
  m.numeraire = numeraire_from_string(get_or<std::string>(jm, "numeraire", "bank"));

  const nlohmann::json& jr = j.at("reward");
  cfg.reward.payoff = payoff_from_string(jr.at("payoff").get<std::string>());
  cfg.reward.strike = get_or<double>(jr, "strike", 100.0);
  cfg.reward.epsilon = get_or<double>(jr, "epsilon", 1e-6);
  cfg.reward.numeraire = numeraire_from_string(get_or<std::string>(jr, "numeraire", "bank"));

  const nlohmann::json& jg = j.at("grid");
  cfg.grid.n_times = jg.at("n_times").get<int>();
  cfg.grid.horizon = jg.at("horizon").get<double>();
  cfg.grid.lockout = get_or<double>(jg, "lockout", 0.0);

  const nlohmann::json& js = j.at("sizes");
  cfg.sizes.n_bins = js.at("n_bins").get<int>();
  cfg.sizes.n_block = js.at("n_block").get<int>();
  cfg.sizes.n_primal = js.at("n_primal").get<std::size_t>();
  cfg.sizes.n_dual = js.at("n_dual").get<std::size_t>();
  cfg.sizes.n_sub = js.at("n_sub").get<std::size_t>();

  cfg.seed = get_or<std::uint64_t>(j, "seed", 1);
  cfg.scale = get_or<double>(j, "scale", 0.25);
  cfg.out = get_or<std::string>(j, "out", "");
  cfg.save_coercion = get_or<std::string>(j, "save_coercion", "");
  cfg.load_coercion = get_or<std::string>(j, "load_coercion", "");
  cfg.threads = get_or<int>(j, "threads", 0);
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json jm;
  const ModelSpec& m = cfg.model;
  jm["kind"] = to_string(m.kind);
  jm["dim"] = m.dim;
  jm["s0"] = m.s0;
  jm["rate"] = m.rate;
  jm["div_yield"] = m.div_yield;
  jm["vol"] = m.vol;
  jm["corr"] = m.corr;
  if (!m.sigma.empty()) {
    std::vector<std::vector<double>> rows;
    const std::size_t d = static_cast<std::size_t>(m.dim);
    for (std::size_t i = 0; i < d; ++i)
      rows.emplace_back(m.sigma.begin() + i * d, m.sigma.begin() + (i + 1) * d);
    jm["sigma"] = rows;
  }
  if (m.kind == ModelKind::AsianGbm)
    jm["asian"] = {{"delta", m.asian.delta}, {"a0", m.asian.a0}};
  if (m.kind == ModelKind::WindowGbm) jm["window"] = {{"lags", m.window.lags}};
  if (m.kind == ModelKind::Svsi) {
    const SvsiParams& p = m.svsi;
    jm["svsi"] = {{"rho_s", p.rho_s},         {"rho_xi", p.rho_xi},
                  {"rho_r", p.rho_r},         {"sigma_bar", p.sigma_bar},
                  {"r_bar", p.r_bar},         {"beta_xi", p.beta_xi},
                  {"sigma_xi", p.sigma_xi},   {"beta_r", p.beta_r},
                  {"sigma_r", p.sigma_r},     {"sigma0", p.sigma0},
                  {"r0", p.r0},               {"vol_stochastic", p.vol_stochastic},
                  {"rate_stochastic", p.rate_stochastic}};
  }
  jm["numeraire"] = to_string(m.numeraire);

  nlohmann::json j;
  j["example"] = cfg.example;
  j["params"] = cfg.params;
  j["model"] = jm;
  j["reward"] = {{"payoff", to_string(cfg.reward.payoff)},
                 {"strike", cfg.reward.strike},
                 {"epsilon", cfg.reward.epsilon},
                 {"numeraire", to_string(cfg.reward.numeraire)}};
  j["grid"] = {{"n_times", cfg.grid.n_times},
               {"horizon", cfg.grid.horizon},
               {"lockout", cfg.grid.lockout}};
  j["sizes"] = {{"n_bins", cfg.sizes.n_bins},
                {"n_block", cfg.sizes.n_block},
                {"n_primal", cfg.sizes.n_primal},
                {"n_dual", cfg.sizes.n_dual},
                {"n_sub", cfg.sizes.n_sub}};
  j["seed"] = cfg.seed;
  j["scale"] = cfg.scale;
  j["out"] = cfg.out;
  j["save_coercion"] = cfg.save_coercion;
  j["load_coercion"] = cfg.load_coercion;
  j["threads"] = cfg.threads;
  return j;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

} // namespace bmc
