#include "bmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmc {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::MultiGbm: return "multi_gbm";
    case ModelKind::AsianGbm: return "asian_gbm";
    case ModelKind::WindowGbm: return "window_gbm";
    case ModelKind::Svsi: return "svsi";
  }
  return "?";
}

std::string to_string(Numeraire n) { return n == Numeraire::Bank ? "bank" : "stock"; }

void ModelSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("ModelSpec: dim must be >= 1");
  if (s0.empty() || (s0.size() != 1 && s0.size() != static_cast<std::size_t>(dim)))
    throw std::invalid_argument("ModelSpec: s0 must have 1 or dim entries");
  for (double s : s0)
    if (!(s > 0.0)) throw std::invalid_argument("ModelSpec: initial prices must be positive");
  if (!sigma.empty() && sigma.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("ModelSpec: sigma must be dim x dim");
  if (sigma.empty()) {
    if (vol < 0.0) throw std::invalid_argument("ModelSpec: vol must be >= 0");
    if (!(std::fabs(corr) < 1.0))
      throw std::invalid_argument("ModelSpec: |corr| must be < 1");
    if (dim > 1 && !(1.0 + (dim - 1) * corr > 0.0))
      throw std::invalid_argument("ModelSpec: correlation matrix not positive definite");
  }
  if (div_yield < 0.0) throw std::invalid_argument("ModelSpec: div_yield must be >= 0");
  if (kind == ModelKind::AsianGbm || kind == ModelKind::WindowGbm) {
    if (dim != 1) throw std::invalid_argument("ModelSpec: asian/window models are single-asset");
  }
  if (kind == ModelKind::AsianGbm) {
    if (!(asian.delta > 0.0)) throw std::invalid_argument("ModelSpec: asian delta must be > 0");
    if (asian.a0 == 0.0)
      throw std::invalid_argument("ModelSpec: asian a0 must be positive (or negative for spot)");
  }
  if (kind == ModelKind::WindowGbm && window.lags < 1)
    throw std::invalid_argument("ModelSpec: window lags must be >= 1");
  if (kind == ModelKind::Svsi) {
    const SvsiParams& p = svsi;
    if (!(std::fabs(p.rho_s) < 1.0 && std::fabs(p.rho_xi) < 1.0 && std::fabs(p.rho_r) < 1.0))
      throw std::invalid_argument("ModelSpec: svsi correlations must have magnitude < 1");
    if (!(p.sigma_bar > 0.0 && p.r_bar > 0.0))
      throw std::invalid_argument("ModelSpec: svsi sigma_bar and r_bar must be > 0");
    if (p.vol_stochastic && !(p.beta_xi > 0.0 && p.sigma_xi > 0.0))
      throw std::invalid_argument("ModelSpec: svsi beta_xi and sigma_xi must be > 0");
    if (p.rate_stochastic && !(p.beta_r > 0.0 && p.sigma_r > 0.0))
      throw std::invalid_argument("ModelSpec: svsi beta_r and sigma_r must be > 0");
    if (!(p.sigma0 > 0.0 && p.r0 > 0.0))
      throw std::invalid_argument("ModelSpec: svsi sigma0 and r0 must be > 0");
    if (numeraire == Numeraire::Stock)
      throw std::invalid_argument("ModelSpec: stock numeraire not supported for svsi");
  }
  if (numeraire == Numeraire::Stock) {
    if (dim != 1) throw std::invalid_argument("ModelSpec: stock numeraire requires dim == 1");
    if (div_yield != 0.0)
      throw std::invalid_argument("ModelSpec: stock numeraire requires zero dividend yield");
  }
}

std::vector<double> ModelSpec::loading_matrix() const {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<double> L(d * d, 0.0);
  if (!sigma.empty()) {
    // the user-supplied matrix already is a loading factor of Sigma
    return sigma;
  }
  if (vol == 0.0) return L;
  // Cholesky of vol^2 * ((1-corr) I + corr J), done generically.
  std::vector<double> a(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i * d + j] = vol * vol * (i == j ? 1.0 : corr);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (s <= 0.0) throw std::runtime_error("loading_matrix: matrix not positive definite");
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
  return L;
}

double ModelSpec::total_var(int i) const {
  if (sigma.empty()) return vol * vol;
  const std::size_t d = static_cast<std::size_t>(dim);
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double v = sigma[static_cast<std::size_t>(i) * d + j];
    s += v * v;
  }
  return s;
}

StateBlock init_paths(const ModelSpec& model, const TimeGrid& grid, std::size_t n,
                      const RngStream& stream, std::uint64_t first_path) {
  (void)stream; // initial states are deterministic
  model.validate();
  grid.validate();
  if (n == 0) throw std::invalid_argument("init_paths: n must be >= 1");

  StateBlock b;
  b.t_index = 0;
  b.n = n;
  b.first_path = first_path;
  b.dim = model.dim;
  b.core.resize(n * static_cast<std::size_t>(model.dim));
  for (std::size_t p = 0; p < n; ++p)
    for (int i = 0; i < model.dim; ++i)
      b.core[p * static_cast<std::size_t>(model.dim) + i] = std::log(model.spot(i));

  switch (model.kind) {
    case ModelKind::MultiGbm:
      break;
    case ModelKind::AsianGbm: {
      const double a0 = model.asian.a0 > 0.0 ? model.asian.a0 : model.spot(0);
      b.avg.assign(n, a0);
      b.avg_mass = model.asian.delta;
      break;
    }
    case ModelKind::WindowGbm: {
      b.win_cap = model.window.lags + 1;
      b.window.assign(n * static_cast<std::size_t>(b.win_cap), 0.0);
      for (std::size_t p = 0; p < n; ++p) b.window[p * static_cast<std::size_t>(b.win_cap)] = model.spot(0);
      b.win_count = 1;
      b.win_head = 1 % b.win_cap;
      break;
    }
    case ModelKind::Svsi: {
      const double xi0 = std::log(model.svsi.sigma0 / model.svsi.sigma_bar);
      const double z0 = std::log(model.svsi.r0 / model.svsi.r_bar);
      b.xi.assign(n * static_cast<std::size_t>(model.dim), xi0);
      b.zrate.assign(n, z0);
      b.disc.assign(n, 0.0);
      break;
    }
  }
  return b;
}

namespace {

struct StepContext {
  const ModelSpec& model;
  double dt = 0.0;
  double sq_dt = 0.0;
  std::vector<double> loading; // empty for diagonal GBM, svsi
  std::vector<double> drift;   // per-asset drift of the discounted log price
  // svsi per-step OU coefficients
  double xi_decay = 0.0, xi_shock = 0.0;
  double z_decay = 0.0, z_shock = 0.0;

  StepContext(const ModelSpec& m, double dt_) : model(m), dt(dt_), sq_dt(std::sqrt(dt_)) {
    if (m.kind != ModelKind::Svsi) {
      if (!m.diagonal_loading()) loading = m.loading_matrix();
      drift.resize(static_cast<std::size_t>(m.dim));
      for (int i = 0; i < m.dim; ++i) {
        const double var = m.total_var(i);
        double mu = -0.5 * var - m.div_yield;
        if (m.numeraire == Numeraire::Stock) mu += var; // Girsanov shift into the stock measure
        drift[static_cast<std::size_t>(i)] = mu;
      }
    } else {
      const SvsiParams& p = m.svsi;
      if (p.vol_stochastic) {
        xi_decay = std::exp(-p.beta_xi * dt);
        xi_shock = p.sigma_xi * std::sqrt((1.0 - xi_decay * xi_decay) / (2.0 * p.beta_xi));
      } else {
        xi_decay = 1.0;
        xi_shock = 0.0;
      }
      if (p.rate_stochastic) {
        z_decay = std::exp(-p.beta_r * dt);
        z_shock = p.sigma_r * std::sqrt((1.0 - z_decay * z_decay) / (2.0 * p.beta_r));
      } else {
        z_decay = 1.0;
        z_shock = 0.0;
      }
    }
  }
};

// Advance the log prices (and svsi auxiliaries) of one path in place,
// pulling normals from rs. Asian/window auxiliaries are the caller's job.
void step_one(const StepContext& cx, Substream& rs, std::span<double> core, double* xi,
              double* z, double* disc, std::vector<double>& zbuf) {
  const ModelSpec& m = cx.model;
  const int d = m.dim;

  if (m.kind == ModelKind::Svsi) {
    const SvsiParams& p = m.svsi;
    const double rho_sp = std::sqrt(1.0 - p.rho_s * p.rho_s);
    const double rho_xip = std::sqrt(1.0 - p.rho_xi * p.rho_xi);
    const double rho_rp = std::sqrt(1.0 - p.rho_r * p.rho_r);
    const double z_m = rs.normal();
    const double r_now = p.r_bar * std::exp(*z);
    for (int i = 0; i < d; ++i) {
      const double sig_now = p.sigma_bar * std::exp(xi[i]);
      const double z_s = rs.normal();
      core[static_cast<std::size_t>(i)] +=
          sig_now * (p.rho_s * z_m + rho_sp * z_s) * cx.sq_dt - 0.5 * sig_now * sig_now * cx.dt;
    }
    if (p.vol_stochastic) {
      for (int i = 0; i < d; ++i) {
        const double z_x = rs.normal();
        xi[i] = xi[i] * cx.xi_decay + cx.xi_shock * (p.rho_xi * z_m + rho_xip * z_x);
      }
    }
    if (p.rate_stochastic) {
      const double z_r = rs.normal();
      *z = *z * cx.z_decay + cx.z_shock * (p.rho_r * z_m + rho_rp * z_r);
    }
    *disc += r_now * cx.dt; // rate frozen at the interval start
    return;
  }

  // GBM kinds: exact log-Euler step of the discounted log price.
  if (m.diagonal_loading()) {
    for (int i = 0; i < d; ++i)
      core[static_cast<std::size_t>(i)] +=
          m.vol * cx.sq_dt * rs.normal() + cx.drift[static_cast<std::size_t>(i)] * cx.dt;
  } else {
    zbuf.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) zbuf[static_cast<std::size_t>(i)] = rs.normal();
    const std::size_t dd = static_cast<std::size_t>(d);
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= i; ++j) acc += cx.loading[dd * i + j] * zbuf[static_cast<std::size_t>(j)];
      core[static_cast<std::size_t>(i)] += acc * cx.sq_dt + cx.drift[static_cast<std::size_t>(i)] * cx.dt;
    }
  }
}

} // namespace

void step(const ModelSpec& model, const TimeGrid& grid, StateBlock& block,
          const RngStream& stream) {
  if (block.t_index >= grid.n_times() - 1)
    throw std::runtime_error("step: cannot step past the final grid time");
  const int t_from = block.t_index;
  const double dt = grid.dt(t_from);
  StepContext cx(model, dt);
  const int d = model.dim;
  std::vector<double> zbuf;

  for (std::size_t p = 0; p < block.n; ++p) {
    Substream rs = stream.at(block.path_id(p), static_cast<std::uint32_t>(t_from + 1));
    std::span<double> core{block.core.data() + p * static_cast<std::size_t>(d),
                           static_cast<std::size_t>(d)};

    if (model.kind == ModelKind::AsianGbm) {
      const double s_now = std::exp(core[0] + model.rate * grid.times[t_from]);
      block.avg[p] = (block.avg[p] * block.avg_mass + s_now * dt) / (block.avg_mass + dt);
    }

    step_one(cx, rs, core,
             model.kind == ModelKind::Svsi ? block.xi.data() + p * static_cast<std::size_t>(d)
                                           : nullptr,
             model.kind == ModelKind::Svsi ? &block.zrate[p] : nullptr,
             model.kind == ModelKind::Svsi ? &block.disc[p] : nullptr, zbuf);

    if (model.kind == ModelKind::WindowGbm) {
      const double s_new = std::exp(core[0] + model.rate * grid.times[t_from + 1]);
      block.window[p * static_cast<std::size_t>(block.win_cap) +
                   static_cast<std::size_t>(block.win_head)] = s_new;
    }
  }

  if (model.kind == ModelKind::AsianGbm) block.avg_mass += dt;
  if (model.kind == ModelKind::WindowGbm) {
    block.win_head = (block.win_head + 1) % block.win_cap;
    block.win_count = std::min(block.win_count + 1, block.win_cap);
  }
  ++block.t_index;
}

void substep_into(const ModelSpec& model, const TimeGrid& grid, const StateBlock& parent,
                  std::size_t row, std::size_t n_sub, const RngStream& stream,
                  StateBlock& out) {
  if (n_sub == 0) throw std::invalid_argument("substep: n_sub must be >= 1");
  if (parent.t_index >= grid.n_times() - 1)
    throw std::runtime_error("substep: cannot step past the final grid time");
  const int d = model.dim;
  const std::size_t dd = static_cast<std::size_t>(d);
  const int t_from = parent.t_index;
  const double dt = grid.dt(t_from);

  out.t_index = t_from;
  out.n = n_sub;
  out.first_path = parent.path_id(row);
  out.dim = d;
  out.core.resize(n_sub * dd);
  for (std::size_t j = 0; j < n_sub; ++j)
    std::copy_n(parent.core.data() + row * dd, dd, out.core.data() + j * dd);

  out.avg.clear();
  out.window.clear();
  out.xi.clear();
  out.zrate.clear();
  out.disc.clear();
  out.win_cap = parent.win_cap;
  out.win_count = parent.win_count;
  out.win_head = parent.win_head;
  out.avg_mass = parent.avg_mass;
  if (model.kind == ModelKind::AsianGbm) out.avg.assign(n_sub, parent.avg[row]);
  if (model.kind == ModelKind::WindowGbm) {
    out.window.resize(n_sub * static_cast<std::size_t>(parent.win_cap));
    for (std::size_t j = 0; j < n_sub; ++j)
      std::copy_n(parent.window.data() + row * static_cast<std::size_t>(parent.win_cap),
                  static_cast<std::size_t>(parent.win_cap),
                  out.window.data() + j * static_cast<std::size_t>(parent.win_cap));
  }
  if (model.kind == ModelKind::Svsi) {
    out.xi.resize(n_sub * dd);
    for (std::size_t j = 0; j < n_sub; ++j)
      std::copy_n(parent.xi.data() + row * dd, dd, out.xi.data() + j * dd);
    out.zrate.assign(n_sub, parent.zrate[row]);
    out.disc.assign(n_sub, parent.disc[row]);
  }

  StepContext cx(model, dt);
  std::vector<double> zbuf;
  const std::uint64_t parent_id = parent.path_id(row);
  for (std::size_t j = 0; j < n_sub; ++j) {
    Substream rs = stream.at(parent_id, static_cast<std::uint32_t>(t_from + 1),
                             static_cast<std::uint32_t>(j + 1));
    std::span<double> core{out.core.data() + j * dd, dd};

    if (model.kind == ModelKind::AsianGbm) {
      const double s_now = std::exp(core[0] + model.rate * grid.times[t_from]);
      out.avg[j] = (out.avg[j] * out.avg_mass + s_now * dt) / (out.avg_mass + dt);
    }

    step_one(cx, rs, core,
             model.kind == ModelKind::Svsi ? out.xi.data() + j * dd : nullptr,
             model.kind == ModelKind::Svsi ? &out.zrate[j] : nullptr,
             model.kind == ModelKind::Svsi ? &out.disc[j] : nullptr, zbuf);

    if (model.kind == ModelKind::WindowGbm) {
      const double s_new = std::exp(core[0] + model.rate * grid.times[t_from + 1]);
      out.window[j * static_cast<std::size_t>(out.win_cap) +
                 static_cast<std::size_t>(out.win_head)] = s_new;
    }
  }

  if (model.kind == ModelKind::AsianGbm) out.avg_mass += dt;
  if (model.kind == ModelKind::WindowGbm) {
    out.win_head = (out.win_head + 1) % out.win_cap;
    out.win_count = std::min(out.win_count + 1, out.win_cap);
  }
  ++out.t_index;
}

StateBlock substep(const ModelSpec& model, const TimeGrid& grid, const StateBlock& parent,
                   std::size_t row, std::size_t n_sub, const RngStream& stream) {
  StateBlock out;
  substep_into(model, grid, parent, row, n_sub, stream, out);
  return out;
}

double discount_factor(const ModelSpec& model, const TimeGrid& grid, const StateBlock& block,
                       std::size_t p) {
  if (model.kind == ModelKind::Svsi) return std::exp(-block.disc[p]);
  return std::exp(-model.rate * grid.times[static_cast<std::size_t>(block.t_index)]);
}

double price(const ModelSpec& model, const TimeGrid& grid, const StateBlock& block,
             std::size_t p, int i) {
  const double x = block.core[p * static_cast<std::size_t>(block.dim) + i];
  if (model.kind == ModelKind::Svsi) return std::exp(x + block.disc[p]);
  return std::exp(x + model.rate * grid.times[static_cast<std::size_t>(block.t_index)]);
}

void window_prices(const StateBlock& block, std::size_t p, std::vector<double>& out) {
  out.clear();
  const std::size_t base = p * static_cast<std::size_t>(block.win_cap);
  // oldest entry sits win_count slots behind the head
  int idx = block.win_head - block.win_count;
  while (idx < 0) idx += block.win_cap;
  for (int k = 0; k < block.win_count; ++k) {
    out.push_back(block.window[base + static_cast<std::size_t>(idx)]);
    idx = (idx + 1) % block.win_cap;
  }
}

} // namespace bmc
