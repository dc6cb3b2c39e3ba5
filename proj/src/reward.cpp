#include "bmc/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmc {

std::string to_string(PayoffId id) {
  switch (id) {
    case PayoffId::MinPut: return "min_put";
    case PayoffId::MaxCall: return "max_call";
    case PayoffId::BasketPut: return "basket_put";
    case PayoffId::AsianFixedCall: return "asian_fixed_call";
    case PayoffId::AsianFloatCall: return "asian_float_call";
    case PayoffId::LookbackWindow: return "lookback_window";
    case PayoffId::RangeWindow: return "range_window";
  }
  return "?";
}

PayoffId payoff_from_string(const std::string& s) {
  if (s == "min_put") return PayoffId::MinPut;
  if (s == "max_call") return PayoffId::MaxCall;
  if (s == "basket_put") return PayoffId::BasketPut;
  if (s == "asian_fixed_call") return PayoffId::AsianFixedCall;
  if (s == "asian_float_call") return PayoffId::AsianFloatCall;
  if (s == "lookback_window") return PayoffId::LookbackWindow;
  if (s == "range_window") return PayoffId::RangeWindow;
  throw std::invalid_argument("unknown payoff id: " + s);
}

namespace {

bool has_strike(PayoffId id) {
  return id != PayoffId::LookbackWindow && id != PayoffId::RangeWindow;
}

bool payoff_matches_model(PayoffId id, ModelKind kind) {
  switch (id) {
    case PayoffId::MinPut:
    case PayoffId::MaxCall:
    case PayoffId::BasketPut:
      return kind == ModelKind::MultiGbm || kind == ModelKind::Svsi;
    case PayoffId::AsianFixedCall:
    case PayoffId::AsianFloatCall:
      return kind == ModelKind::AsianGbm;
    case PayoffId::LookbackWindow:
    case PayoffId::RangeWindow:
      return kind == ModelKind::WindowGbm;
  }
  return false;
}

} // namespace

void RewardSpec::validate() const {
  if (epsilon < 0.0 || epsilon >= 1e-3)
    throw std::invalid_argument("RewardSpec: epsilon must lie in [0, 1e-3)");
  if (has_strike(payoff) && !(strike > 0.0))
    throw std::invalid_argument("RewardSpec: strike must be positive");
}

RewardEvaluator::RewardEvaluator(const RewardSpec& spec, const ModelSpec& model)
    : spec_(spec), kind_(model.kind), rate_(model.rate), s0_(model.spot(0)) {
  spec_.validate();
  if (!payoff_matches_model(spec_.payoff, model.kind))
    throw std::invalid_argument("RewardEvaluator: payoff " + to_string(spec_.payoff) +
                                " incompatible with model " + to_string(model.kind));
  if (spec_.numeraire != model.numeraire)
    throw std::invalid_argument(
        "RewardEvaluator: reward and model disagree on the numeraire; "
        "run apply_numeraire first");
}

double RewardEvaluator::operator()(const TimeGrid& grid, const StateBlock& block,
                                   std::size_t p) const {
  const std::size_t d = static_cast<std::size_t>(block.dim);
  const double* x = block.core.data() + p * d;
  // exp(x) is the discounted price, so K D_t pairs with it directly.
  const double disc = (kind_ == ModelKind::Svsi)
                          ? std::exp(-block.disc[p])
                          : std::exp(-rate_ * grid.times[static_cast<std::size_t>(block.t_index)]);

  double g = 0.0;
  switch (spec_.payoff) {
    case PayoffId::MinPut: {
      double xm = x[0];
      for (std::size_t i = 1; i < d; ++i) xm = std::min(xm, x[i]);
      g = tie_break(spec_.strike * disc - std::exp(xm));
      break;
    }
    case PayoffId::MaxCall: {
      double xm = x[0];
      for (std::size_t i = 1; i < d; ++i) xm = std::max(xm, x[i]);
      g = tie_break(std::exp(xm) - spec_.strike * disc);
      break;
    }
    case PayoffId::BasketPut: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += std::exp(x[i]);
      g = tie_break(spec_.strike * disc - s / static_cast<double>(d));
      break;
    }
    case PayoffId::AsianFixedCall:
      g = tie_break(disc * (block.avg[p] - spec_.strike));
      break;
    case PayoffId::AsianFloatCall:
      // disc * (A - S) with S = exp(x)/disc
      g = tie_break(disc * block.avg[p] - std::exp(x[0]));
      break;
    case PayoffId::LookbackWindow:
    case PayoffId::RangeWindow: {
      // max/min over the valid ring slots; order inside the window is irrelevant
      const std::size_t base = p * static_cast<std::size_t>(block.win_cap);
      const int m = std::min(block.win_count, block.win_cap);
      double hi = block.window[base], lo = block.window[base];
      for (int k = 1; k < m; ++k) {
        const double s = block.window[base + static_cast<std::size_t>(k)];
        hi = std::max(hi, s);
        lo = std::min(lo, s);
      }
      if (spec_.payoff == PayoffId::LookbackWindow && spec_.numeraire == Numeraire::Stock &&
          spec_.epsilon > 0.0) {
        // In the stock numeraire the lookback reward is S0 * max/S_t, which
        // sits exactly at S0 whenever the current price IS the window max --
        // an atom that would defeat order-statistic binning. Break it the
        // same way the puts are broken: let the max over the *other* window
        // entries leak through below the kink.
        const int newest = (block.win_head - 1 + block.win_cap) % block.win_cap;
        double hi_rest = 0.0;
        for (int k = 0; k < m; ++k) {
          if (k == newest) continue;
          hi_rest = std::max(hi_rest, block.window[base + static_cast<std::size_t>(k)]);
        }
        const double s_now = std::exp(x[0]) / disc;
        const double u = (m > 1 ? hi_rest / s_now : 1.0) - 1.0;
        return s0_ * (1.0 + (u > 0.0 ? u : spec_.epsilon * u));
      }
      g = disc * (spec_.payoff == PayoffId::LookbackWindow ? hi : hi - lo);
      break;
    }
  }

  if (spec_.numeraire == Numeraire::Stock) {
    // divide by psi = D_t S_t / S_0 = exp(x)/S_0
    g *= s0_ * std::exp(-x[0]);
  }
  return g;
}

std::pair<RewardSpec, ModelSpec> apply_numeraire(const RewardSpec& spec,
                                                 const ModelSpec& model) {
  spec.validate();
  model.validate();
  RewardSpec rs = spec;
  ModelSpec ms = model;
  if (spec.numeraire == Numeraire::Bank) {
    ms.numeraire = Numeraire::Bank;
    return {rs, ms};
  }
  if (model.dim != 1)
    throw std::invalid_argument("apply_numeraire: stock numeraire requires a single asset");
  ms.numeraire = Numeraire::Stock;
  ms.validate(); // rejects dividends and svsi
  return {rs, ms};
}

} // namespace bmc
