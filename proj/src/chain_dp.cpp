#include "bmc/chain_dp.hpp"

#include <stdexcept>

namespace bmc {

namespace {

// One continuation value; the dual estimator's exact mode reuses the stored
// results of this loop, so it must stay the single source of these sums.
inline double dot_row(const double* p_row, const double* v_next, int n) {
  double s = 0.0;
  for (int m = 0; m < n; ++m) s += p_row[m] * v_next[m];
  return s;
}

} // namespace

void ValueStoppingTable::rebuild_continuation(const Coercion& c) {
  const int nt = grid.n_times();
  const int nb = n_bins;
  cont.assign(static_cast<std::size_t>(nt) * nb, 0.0);
  for (int t = nt - 2; t >= 0; --t) {
    const double* v_next = value.data() + static_cast<std::size_t>(t + 1) * nb;
    for (int k = 0; k < nb; ++k)
      cont[static_cast<std::size_t>(t) * nb + k] = dot_row(c.trans_row(t, k), v_next, nb);
  }
}

ValueStoppingTable solve_chain(const Coercion& c) {
  const int nt = c.grid.n_times();
  const int nb = c.n_bins;
  if (nt < 2 || nb < 1) throw std::invalid_argument("solve_chain: empty coercion");

  ValueStoppingTable tab;
  tab.grid = c.grid;
  tab.n_bins = nb;
  tab.value.assign(static_cast<std::size_t>(nt) * nb, 0.0);
  tab.stop.assign(static_cast<std::size_t>(nt) * nb, 0);
  tab.cont.assign(static_cast<std::size_t>(nt) * nb, 0.0);

  // expiry: the option is exercised, V = eta_T
  for (int k = 0; k < nb; ++k) {
    tab.value[static_cast<std::size_t>(nt - 1) * nb + k] = c.value(nt - 1, k);
    tab.stop[static_cast<std::size_t>(nt - 1) * nb + k] = 1;
  }

  for (int t = nt - 2; t >= 0; --t) {
    const double* v_next = tab.value.data() + static_cast<std::size_t>(t + 1) * nb;
    const bool may_stop = c.grid.can_exercise(t);
    for (int k = 0; k < nb; ++k) {
      const double cont = dot_row(c.trans_row(t, k), v_next, nb);
      tab.cont[static_cast<std::size_t>(t) * nb + k] = cont;
      const double eta = c.value(t, k);
      if (may_stop && eta >= cont) {
        tab.value[static_cast<std::size_t>(t) * nb + k] = eta;
        tab.stop[static_cast<std::size_t>(t) * nb + k] = 1;
      } else {
        tab.value[static_cast<std::size_t>(t) * nb + k] = cont;
      }
    }
  }
  return tab;
}

double value_at(const ValueStoppingTable& table, const Coercion& c, int t_index, double yval) {
  return table.v(t_index, locate_bin(c, t_index, yval));
}

bool stop_at(const ValueStoppingTable& table, const Coercion& c, int t_index, double yval) {
  return table.s(t_index, locate_bin(c, t_index, yval));
}

double initial_value(const ValueStoppingTable& table, const Coercion& c, double y0) {
  return value_at(table, c, 0, y0);
}

} // namespace bmc
