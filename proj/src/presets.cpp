#include "bmc/presets.hpp"

#include <cmath>
#include <cstdio>

namespace bmc {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

ExperimentConfig min_put_gbm(int d) {
  ExperimentConfig cfg;
  cfg.example = "min_put";
  cfg.params = "d=" + std::to_string(d);
  cfg.model.kind = ModelKind::MultiGbm;
  cfg.model.dim = d;
  cfg.model.s0 = {100.0};
  cfg.model.rate = 0.06;
  cfg.model.vol = 0.6;
  cfg.model.corr = 0.0;
  cfg.reward.payoff = PayoffId::MinPut;
  cfg.reward.strike = 100.0;
  cfg.grid = {40, 0.5, 0.0};
  cfg.sizes = {200, 200, 50000, 400, 60};
  return cfg;
}

ExperimentConfig max_call_gbm(int m, double s0) {
  ExperimentConfig cfg;
  cfg.example = "max_call";
  cfg.params = "m=" + std::to_string(m) + ";s0=" + fmt("%.0f", s0);
  cfg.model.kind = ModelKind::MultiGbm;
  cfg.model.dim = 5;
  cfg.model.s0 = {s0};
  cfg.model.rate = 0.05;
  cfg.model.div_yield = 0.1;
  cfg.model.vol = 0.2;
  cfg.reward.payoff = PayoffId::MaxCall;
  cfg.reward.strike = 100.0;
  cfg.grid = {m + 1, 3.0, 0.0}; // exercise dates i*T/m, i = 0..m
  cfg.sizes = {500, 100, 50000, 4000, 150};
  return cfg;
}

ExperimentConfig basket_put_gbm(int d, double vol) {
  ExperimentConfig cfg;
  cfg.example = "basket_put";
  cfg.params = "d=" + std::to_string(d) + ";vol=" + fmt("%.2f", vol);
  cfg.model.kind = ModelKind::MultiGbm;
  cfg.model.dim = d;
  cfg.model.s0 = {100.0};
  cfg.model.rate = 0.03;
  cfg.model.vol = vol;
  cfg.model.corr = 0.5;
  cfg.reward.payoff = PayoffId::BasketPut;
  cfg.reward.strike = 100.0;
  cfg.grid = {40, 0.25, 0.0};
  cfg.sizes = {500, 200, 50000, 1000, 160};
  return cfg;
}

ExperimentConfig asian_fixed(double a0, double s0) {
  ExperimentConfig cfg;
  cfg.example = "asian_fixed";
  cfg.params = "a0=" + fmt("%.0f", a0) + ";s0=" + fmt("%.0f", s0);
  cfg.model.kind = ModelKind::AsianGbm;
  cfg.model.dim = 1;
  cfg.model.s0 = {s0};
  cfg.model.rate = 0.06;
  cfg.model.vol = 0.2;
  cfg.model.asian = {0.25, a0};
  cfg.reward.payoff = PayoffId::AsianFixedCall;
  cfg.reward.strike = 100.0;
  cfg.grid = {40, 2.0, 0.25};
  cfg.sizes = {500, 100, 50000, 4000, 125};
  return cfg;
}

ExperimentConfig asian_float(double s0) {
  ExperimentConfig cfg;
  cfg.example = "asian_float";
  cfg.params = "s0=" + fmt("%.0f", s0);
  cfg.model.kind = ModelKind::AsianGbm;
  cfg.model.dim = 1;
  cfg.model.s0 = {s0};
  cfg.model.rate = 0.06;
  cfg.model.vol = 0.2;
  cfg.model.asian = {0.25, 100.0};
  cfg.reward.payoff = PayoffId::AsianFloatCall;
  cfg.reward.strike = 100.0; // unused by the payoff, kept positive
  cfg.reward.numeraire = Numeraire::Stock;
  cfg.grid = {40, 2.0, 0.25};
  cfg.sizes = {200, 100, 50000, 4000, 50};
  return cfg;
}

// `days` is the window length in days; the grid is in half-day or full-day
// recording steps depending on the table.
ExperimentConfig window_option(PayoffId payoff, int days) {
  const bool lookback = payoff == PayoffId::LookbackWindow;
  ExperimentConfig cfg;
  cfg.example = lookback ? "lookback" : "range";
  cfg.params = "a_days=" + std::to_string(days);
  cfg.model.kind = ModelKind::WindowGbm;
  cfg.model.dim = 1;
  cfg.model.s0 = {100.0};
  cfg.model.rate = 0.05;
  cfg.model.vol = 0.5;
  cfg.model.window.lags = lookback ? 2 * days : days;
  cfg.reward.payoff = payoff;
  cfg.reward.numeraire = Numeraire::Stock;
  cfg.grid = {lookback ? 500 : 250, 1.0, 0.0};
  cfg.sizes = lookback ? SizesConfig{250, 60, 50000, 4000, 25}
                       : SizesConfig{200, 50, 50000, 4000, 25};
  return cfg;
}

ExperimentConfig svsi_min_put() {
  ExperimentConfig cfg;
  cfg.example = "svsi_min_put";
  cfg.model.kind = ModelKind::Svsi;
  cfg.model.dim = 5;
  cfg.model.s0 = {100.0};
  cfg.model.svsi = SvsiParams{}; // defaults carry the published parameter set
  cfg.reward.payoff = PayoffId::MinPut;
  cfg.reward.strike = 100.0;
  cfg.grid = {40, 0.5, 0.0};
  cfg.sizes = {200, 50, 50000, 4000, 50};
  return cfg;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  auto add = [&out](std::string id, std::string desc, ExperimentConfig cfg) {
    out.push_back({std::move(id), std::move(desc), std::move(cfg)});
  };

  for (int d : {2, 3, 4, 5, 10, 15, 30, 60})
    add("table1_d" + std::to_string(d), "min put on " + std::to_string(d) + " independent assets",
        min_put_gbm(d));

  for (int m : {3, 6, 9})
    for (double s0 : {90.0, 100.0, 110.0})
      add("table2_m" + std::to_string(m) + "_s" + fmt("%.0f", s0),
          "max call on 5 assets, " + std::to_string(m) + " exercise dates", max_call_gbm(m, s0));

  for (int d : {2, 3, 4, 5, 6, 12})
    add("table3_d" + std::to_string(d), "basket put, correlation 0.5", basket_put_gbm(d, 0.2));

  for (int d : {2, 3, 4, 5, 6})
    for (double v : {0.19, 0.20, 0.21})
      add("table4_d" + std::to_string(d) + "_v" + fmt("%.0f", 100 * v),
          "basket put volatility sensitivity", basket_put_gbm(d, v));

  for (double a0 : {90.0, 100.0, 110.0})
    for (double s0 : {80.0, 90.0, 100.0, 110.0, 120.0})
      add("table5_a" + fmt("%.0f", a0) + "_s" + fmt("%.0f", s0), "fixed strike Bermudan-Asian call",
          asian_fixed(a0, s0));

  for (double s0 : {80.0, 90.0, 100.0, 110.0, 120.0})
    add("table6_s" + fmt("%.0f", s0), "floating strike Bermudan-Asian call (stock numeraire)",
        asian_float(s0));

  for (int days : {5, 10, 15, 20, 25})
    add("table7_a" + std::to_string(days), "fixed window lookback, half-day recording",
        window_option(PayoffId::LookbackWindow, days));

  for (int days : {5, 10, 15, 20, 25})
    add("table8_a" + std::to_string(days), "fixed window range, daily recording",
        window_option(PayoffId::RangeWindow, days));

  for (double rho : {-0.15, 0.0, 0.15, 0.30, 0.45, 0.60}) {
    ExperimentConfig cfg = svsi_min_put();
    cfg.params = "rho_s=" + fmt("%.2f", rho);
    cfg.model.svsi.rho_s = rho;
    cfg.model.svsi.vol_stochastic = false;
    cfg.model.svsi.rate_stochastic = false;
    add("table9_rho" + fmt("%+.2f", rho), "svsi min put, market correlation sweep", cfg);
  }

  for (double r0 : {std::exp(-15.6), 0.025, 0.06, 0.10}) {
    ExperimentConfig cfg = svsi_min_put();
    cfg.params = "r0=" + fmt("%.3g", r0);
    cfg.model.svsi.r0 = r0;
    cfg.model.svsi.vol_stochastic = false;
    cfg.model.svsi.rate_stochastic = true;
    add("table10_r" + fmt("%.3g", r0 < 1e-4 ? 0.0 : r0), "svsi min put, stochastic rate", cfg);
  }

  for (double sig0 : {0.10, 0.20, 0.30, 0.40, 0.50, 0.60}) {
    ExperimentConfig cfg = svsi_min_put();
    cfg.params = "sigma0=" + fmt("%.2f", sig0);
    cfg.model.svsi.sigma0 = sig0;
    cfg.model.svsi.vol_stochastic = true;
    cfg.model.svsi.rate_stochastic = false;
    add("table11_sig" + fmt("%.2f", sig0), "svsi min put, stochastic volatility", cfg);
  }

  for (double r0 : {std::exp(-15.6), 0.06}) {
    for (double sig0 : {0.2, 0.4, 0.6}) {
      ExperimentConfig cfg = svsi_min_put();
      cfg.params = "r0=" + fmt("%.3g", r0) + ";sigma0=" + fmt("%.2f", sig0);
      cfg.model.svsi.r0 = r0;
      cfg.model.svsi.sigma0 = sig0;
      add("table12_r" + fmt("%.3g", r0 < 1e-4 ? 0.0 : r0) + "_sig" + fmt("%.2f", sig0),
          "svsi min put, stochastic rate and volatility", cfg);
    }
  }

  for (Preset& p : out) p.config.validate();
  return out;
}

} // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(const std::string& id) {
  for (const Preset& p : presets())
    if (p.id == id) return &p;
  return nullptr;
}

} // namespace bmc
