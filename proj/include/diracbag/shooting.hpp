#pragma once

#include "diracbag/config.hpp"
#include "diracbag/mode.hpp"
#include <cstddef>
#include <vector>

namespace diracbag {

/// Real spinor (u, v). The bag equations are real, so shooting never needs
/// complex arithmetic.
struct SpinorState {
  double u;
  double v;
};

/// Right-hand side of the first-order system for H psi = eps psi with
///   H = [[lambda x + m, -d/dx], [d/dx, lambda x - m]]:
///   du/dx = -(lambda x - eps - m) v,   dv/dx = (lambda x - eps + m) u.
/// At m = 0 this is the massless bag equation. Throws DomainError if |x| > a.
SpinorState rhs(double x, SpinorState s, double eps, const BagConfig &cfg);

enum class Direction { left_to_right, right_to_left };

struct ShootOptions {
  /// Absolute and relative tolerance of the embedded RK5(4) integrator.
  double tol = 1e-12;
  Direction direction = Direction::left_to_right;
  /// Points where samples are recorded, ordered in the integration
  /// direction and starting at the initial boundary. Empty: only the two
  /// boundaries are recorded.
  std::vector<double> output;
};

struct ShootResult {
  /// Boundary mismatch at the far end divided by the spinor magnitude there:
  /// (u(a) + v(a))/|psi(a)| shooting rightwards, (u(-a) - v(-a))/|psi(-a)|
  /// shooting leftwards.
  double mismatch;
  /// Continuous level counter. Increases with eps and is an integer exactly
  /// at eigenvalues; derived from the accumulated Pruefer angle.
  double winding;
  std::vector<double> grid;
  std::vector<SpinorState> samples;
  std::size_t steps;
};

/// Integrates from one wall to the other starting from the wall's boundary
/// condition, (1, 1)/sqrt(2) at x = -a or (1, -1)/sqrt(2) at x = +a.
/// Throws DomainError for tol <= 0 and NumericError if the integrator fails.
ShootResult shoot(double eps, const BagConfig &cfg, double tol = 1e-12);
ShootResult shoot(double eps, const BagConfig &cfg, const ShootOptions &opts);

struct LevelSearch {
  /// Roots are refined until the bracket is narrower than this.
  double root_tol = 1e-12;
  double integrator_tol = 1e-12;
  Direction direction = Direction::left_to_right;
};

/// Eigenstates found in an energy window.
struct Spectrum {
  std::vector<Mode> modes;
  double e_min = 0.0;
  double e_max = 0.0;
  double bracket_grid = 0.0;
  double root_tol = 0.0;
  std::size_t shots = 0;

  std::vector<double> energies() const;
  /// Mode with the given level label, or nullptr.
  const Mode *find(int index) const;
};

/// All eigenvalues in (e_min, e_max). The mismatch is scanned on a grid of
/// spacing <= pi/(8a); sign changes are refined with TOMS 748 (bisection with
/// secant/inverse-cubic steps). Every bracket is cross-checked against the
/// winding count; disagreeing intervals are subdivided, and persistent
/// disagreement (or, at m = 0, a count differing from the analytic spectrum)
/// raises ConsistencyError.
///
/// Labels: n = 0 is the lowest positive level, n = -1 the highest negative.
/// Modes are normalized with u(-a) > 0 and share one sample grid.
Spectrum find_levels(const BagConfig &cfg, double e_min, double e_max,
                     double tol = 1e-12);
Spectrum find_levels(const BagConfig &cfg, double e_min, double e_max,
                     const LevelSearch &search);

/// W = eps_level(lambda) - eps_level(0), levels tracked by label within their
/// sign class. Throws ConsistencyError if the label and the sign-class rank
/// disagree in either spectrum (a level crossed zero).
double exact_shift(const BagConfig &cfg, int level);

} // namespace diracbag
