#ifndef BMC_REWARD_HPP
#define BMC_REWARD_HPP

#include <string>
#include <utility>

#include "bmc/model.hpp"

namespace bmc {

enum class PayoffId {
  MinPut,
  MaxCall,
  BasketPut,
  AsianFixedCall,
  AsianFloatCall,
  LookbackWindow,
  RangeWindow,
};

std::string to_string(PayoffId id);
PayoffId payoff_from_string(const std::string& s);

/// A stopping reward g(t, X_t), already discounted into the chosen numeraire.
///
/// Payoffs with an atom at zero carry a tie-breaking perturbation: the plain
/// (u)^+ is replaced by max(eps*u, u), which keeps the reward sample free of
/// ties so that order-statistic bin edges are well defined. eps = 0 disables
/// the perturbation. Window payoffs have continuous laws and never perturb.
struct RewardSpec {
  PayoffId payoff = PayoffId::MinPut;
  double strike = 100.0;
  double epsilon = 1e-6;
  Numeraire numeraire = Numeraire::Bank;

  void validate() const;
};

/// Evaluates rewards for one (RewardSpec, ModelSpec) pairing. Construction
/// checks payoff/model compatibility and numeraire agreement.
class RewardEvaluator {
 public:
  RewardEvaluator(const RewardSpec& spec, const ModelSpec& model);

  /// Reward of path p in `block` at its current grid time.
  double operator()(const TimeGrid& grid, const StateBlock& block, std::size_t p) const;

  const RewardSpec& spec() const { return spec_; }

 private:
  double tie_break(double u) const {
    return u > 0.0 ? u : spec_.epsilon * u;
  }

  RewardSpec spec_;
  ModelKind kind_;
  double rate_ = 0.0;
  double s0_ = 0.0; // stock-numeraire normalization
};

/// Transform a (reward, model) pair into the numeraire requested by
/// spec.numeraire. The bank numeraire is the identity. The stock numeraire
/// divides the reward by psi(t, x) = D_t S_t / S_0 and shifts the model into
/// the corresponding equivalent measure (log-price drift gains +Sigma_11).
/// Requires a single-asset model without dividends.
std::pair<RewardSpec, ModelSpec> apply_numeraire(const RewardSpec& spec,
                                                 const ModelSpec& model);

} // namespace bmc

#endif // BMC_REWARD_HPP
