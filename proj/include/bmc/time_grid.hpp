#ifndef BMC_TIME_GRID_HPP
#define BMC_TIME_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bmc {

/// The finite set of decision dates in [0, T]. Exercise may be forbidden on a
/// prefix of the grid (lock-out); it is always permitted at expiry.
struct TimeGrid {
  std::vector<double> times;
  std::vector<std::uint8_t> exercise_mask;

  int n_times() const { return static_cast<int>(times.size()); }
  double horizon() const { return times.back(); }
  double dt(int i) const { return times[i + 1] - times[i]; }
  bool can_exercise(int i) const { return exercise_mask[i] != 0; }

  void validate() const {
    if (times.size() < 2) throw std::invalid_argument("TimeGrid: need at least two times");
    if (times.size() != exercise_mask.size())
      throw std::invalid_argument("TimeGrid: mask size mismatch");
    if (times.front() != 0.0) throw std::invalid_argument("TimeGrid: first time must be 0");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw std::invalid_argument("TimeGrid: times must be strictly increasing");
    if (!exercise_mask.back())
      throw std::invalid_argument("TimeGrid: exercise must be permitted at expiry");
  }
};

/// Uniform grid of n_times dates on [0, horizon] with exercise forbidden
/// strictly before the lock-out time.
inline TimeGrid make_uniform_grid(double horizon, int n_times, double lockout = 0.0) {
  if (n_times < 2) throw std::invalid_argument("make_uniform_grid: n_times < 2");
  if (!(horizon > 0.0)) throw std::invalid_argument("make_uniform_grid: horizon <= 0");
  if (lockout < 0.0 || lockout >= horizon)
    throw std::invalid_argument("make_uniform_grid: lockout outside [0, horizon)");
  TimeGrid g;
  g.times.resize(n_times);
  g.exercise_mask.resize(n_times);
  const double tol = 1e-12 * horizon;
  for (int i = 0; i < n_times; ++i) {
    g.times[i] = horizon * static_cast<double>(i) / static_cast<double>(n_times - 1);
    g.exercise_mask[i] = (g.times[i] >= lockout - tol) ? 1 : 0;
  }
  g.times[0] = 0.0;
  g.times[n_times - 1] = horizon;
  g.exercise_mask[n_times - 1] = 1;
  g.validate();
  return g;
}

} // namespace bmc

#endif // BMC_TIME_GRID_HPP
