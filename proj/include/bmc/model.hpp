#ifndef BMC_MODEL_HPP
#define BMC_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bmc/rng.hpp"
#include "bmc/time_grid.hpp"

namespace bmc {

enum class ModelKind { MultiGbm, AsianGbm, WindowGbm, Svsi };
enum class Numeraire { Bank, Stock };

std::string to_string(ModelKind k);
std::string to_string(Numeraire n);

/// Stochastic volatility / stochastic interest parameters. Log prices load on
/// a common market Brownian motion with weight rho_s; per-asset volatility is
/// sigma_bar * exp(xi) with xi an OU process; the short rate is r_bar * exp(z)
/// with z an OU process (lognormal mean-reverting rate).
struct SvsiParams {
  double rho_s = 0.3;
  double rho_xi = 0.3;
  double rho_r = 0.3;
  double sigma_bar = 0.6;
  double r_bar = 0.06;
  double beta_xi = 4.5;
  double sigma_xi = 0.3;
  double beta_r = 0.02;
  double sigma_r = 0.12;
  double sigma0 = 0.6; // initial volatility level (common across assets)
  double r0 = 0.06;    // initial short rate
  bool vol_stochastic = true;
  bool rate_stochastic = true;
};

struct AsianParams {
  double delta = 0.25; // width of the pre-expiry averaging window [-delta, 0]
  double a0 = -1.0;    // initial average; negative means "use spot"
};

struct WindowParams {
  int lags = 10; // payoff window covers the last lags+1 recorded prices
};

/// A simulatable Markov model, advanced one grid step at a time.
struct ModelSpec {
  ModelKind kind = ModelKind::MultiGbm;
  int dim = 1;
  std::vector<double> s0 = {100.0}; // one entry, or one per asset
  double rate = 0.0;                // riskless rate (constant-rate kinds)
  double div_yield = 0.0;
  double vol = 0.0;  // scalar volatility, used when sigma is empty
  double corr = 0.0; // common pairwise correlation, used when sigma is empty
  std::vector<double> sigma; // optional dim*dim loading matrix, row-major
  AsianParams asian;
  WindowParams window;
  SvsiParams svsi;
  Numeraire numeraire = Numeraire::Bank;

  void validate() const;
  double spot(int i) const { return s0.size() == 1 ? s0[0] : s0[static_cast<std::size_t>(i)]; }
  /// Lower-triangular loading L with L L^T = Sigma (any valid factor works;
  /// the increment law only depends on Sigma).
  std::vector<double> loading_matrix() const;
  bool diagonal_loading() const { return sigma.empty() && corr == 0.0; }
  /// Sigma_ii, the per-asset total variance rate.
  double total_var(int i) const;
};

/// A block of simulated paths at one grid time. `core` holds discounted log
/// prices, so exp(core) is the numeraire-discounted price and the reward
/// functions never need the rate path.
struct StateBlock {
  int t_index = 0;
  std::size_t n = 0;
  std::uint64_t first_path = 0; // global path ids [first_path, first_path+n)
  int dim = 1;
  std::vector<double> core; // n x dim

  // asian_gbm
  std::vector<double> avg; // running average of the undiscounted price
  double avg_mass = 0.0;   // elapsed averaging mass t + delta (common to all paths)

  // window_gbm: ring buffer of the last lags+1 recorded prices per path
  std::vector<double> window; // n x (lags+1)
  int win_cap = 0;
  int win_count = 0;
  int win_head = 0; // slot that receives the next recorded price

  // svsi
  std::vector<double> xi;    // n x dim, log volatility deviation
  std::vector<double> zrate; // n, log rate deviation
  std::vector<double> disc;  // n, accumulated integral of r ds

  std::span<const double> core_row(std::size_t p) const {
    return {core.data() + p * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  std::uint64_t path_id(std::size_t p) const { return first_path + p; }
};

/// All paths start from the model's deterministic initial state.
StateBlock init_paths(const ModelSpec& model, const TimeGrid& grid, std::size_t n,
                      const RngStream& stream, std::uint64_t first_path = 0);

/// Advance every path one grid step, drawing from stream at (path, t+1).
void step(const ModelSpec& model, const TimeGrid& grid, StateBlock& block,
          const RngStream& stream);

/// Fill `out` with n_sub independent one-step successors of parent row `row`.
/// Draws are keyed (parent path, t+1, 1..n_sub), so they never collide with
/// the draws that advance the parent.
void substep_into(const ModelSpec& model, const TimeGrid& grid, const StateBlock& parent,
                  std::size_t row, std::size_t n_sub, const RngStream& stream,
                  StateBlock& out);

StateBlock substep(const ModelSpec& model, const TimeGrid& grid, const StateBlock& parent,
                   std::size_t row, std::size_t n_sub, const RngStream& stream);

/// Pathwise discount factor D_t (exp(-r t), or exp(-int r ds) under svsi).
double discount_factor(const ModelSpec& model, const TimeGrid& grid, const StateBlock& block,
                       std::size_t p);

/// Undiscounted price of asset i on path p.
double price(const ModelSpec& model, const TimeGrid& grid, const StateBlock& block,
             std::size_t p, int i);

/// Price recorded in the payoff window, oldest first (window_gbm only).
void window_prices(const StateBlock& block, std::size_t p, std::vector<double>& out);

} // namespace bmc

#endif // BMC_MODEL_HPP
