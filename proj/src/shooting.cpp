#include "diracbag/shooting.hpp"
#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include "diracbag/parallel.hpp"
#include <algorithm>
#include <array>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace diracbag {

using std::numbers::pi;
namespace odeint = boost::numeric::odeint;

namespace {

// (u, v, theta) with theta the Pruefer angle of (u, v).
using State = std::array<double, 3>;

// Leftward shots run in t = -x with increasing t: the Boost 1.74 step limiter
// flips the sign of negative steps, so odeint only ever sees forward time.
struct BagSystem {
  double eps, lambda, mass;
  double orientation; // +1: t = x, -1: t = -x
  void operator()(const State &s, State &ds, double t) const {
    const double p = lambda * orientation * t - eps;
    ds[0] = -orientation * (p - mass) * s[1];
    ds[1] = orientation * (p + mass) * s[0];
    ds[2] = (s[0] * ds[1] - s[1] * ds[0]) / (s[0] * s[0] + s[1] * s[1]);
  }
};

std::string describe(double eps, const BagConfig &cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "eps=" << eps << " a=" << cfg.a() << " m=" << cfg.mass()
     << " lambda=" << cfg.lambda();
  return os.str();
}

} // namespace

SpinorState rhs(double x, SpinorState s, double eps, const BagConfig &cfg) {
  if (!(std::abs(x) <= cfg.a()))
    throw DomainError("rhs: |x| > a");
  const double p = cfg.lambda() * x - eps;
  return {-(p - cfg.mass()) * s.v, (p + cfg.mass()) * s.u};
}

ShootResult shoot(double eps, const BagConfig &cfg, double tol) {
  ShootOptions opts;
  opts.tol = tol;
  return shoot(eps, cfg, opts);
}

ShootResult shoot(double eps, const BagConfig &cfg, const ShootOptions &opts) {
  if (!(opts.tol > 0.0))
    throw DomainError("shoot: tolerance must be > 0");
  if (!std::isfinite(eps))
    throw DomainError("shoot: energy must be finite");

  const double a = cfg.a();
  const bool forward = opts.direction == Direction::left_to_right;
  const double start = forward ? -a : a;
  const double stop = -start;
  const double r = 1.0 / std::sqrt(2.0);
  State state = forward ? State{r, r, pi / 4.0} : State{r, -r, -pi / 4.0};

  const double orientation = forward ? 1.0 : -1.0;
  std::vector<double> times = opts.output;
  if (times.empty())
    times = {start, stop};
  if (times.front() != start)
    throw UsageError("shoot: output points must begin at the starting wall");
  for (auto &t : times)
    t *= orientation;

  const BagSystem system{eps, cfg.lambda(), cfg.mass(), orientation};
  const double max_step = a / 50.0;
  auto stepper = odeint::make_controlled(opts.tol, opts.tol, max_step,
                                         odeint::runge_kutta_dopri5<State>());
  const double dt0 = std::min(max_step, 0.1 / (std::abs(eps) + cfg.mass() +
                                               std::abs(cfg.lambda()) * a + 1.0));

  ShootResult result{};
  result.grid.reserve(times.size());
  result.samples.reserve(times.size());
  State last = state;
  try {
    result.steps = odeint::integrate_times(
        stepper, system, state, times.begin(), times.end(), dt0,
        [&](const State &s, double t) {
          result.grid.push_back(orientation * t);
          result.samples.push_back({s[0], s[1]});
          last = s;
        });
  } catch (const std::exception &e) {
    throw NumericError(std::string("shoot: integrator failed (") + e.what() +
                       ") at " + describe(eps, cfg));
  }
  if (result.grid.empty() || result.grid.back() != stop) {
    // output list did not reach the far wall; finish the integration
    try {
      const double from = result.grid.empty() ? start : result.grid.back();
      result.steps += odeint::integrate_adaptive(stepper, system, last,
                                                 orientation * from, a, dt0);
    } catch (const std::exception &e) {
      throw NumericError(std::string("shoot: integrator failed (") + e.what() +
                         ") at " + describe(eps, cfg));
    }
  }

  const double norm = std::hypot(last[0], last[1]);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw NumericError("shoot: degenerate end state at " + describe(eps, cfg));
  const double swept = last[2] - (forward ? pi / 4.0 : -pi / 4.0);
  if (forward) {
    result.mismatch = (last[0] + last[1]) / norm;
    result.winding = -(swept + pi / 2.0) / pi;
  } else {
    result.mismatch = (last[0] - last[1]) / norm;
    result.winding = (swept - pi / 2.0) / pi;
  }
  return result;
}

std::vector<double> Spectrum::energies() const {
  std::vector<double> out;
  out.reserve(modes.size());
  for (const auto &m : modes)
    out.push_back(m.energy());
  return out;
}

const Mode *Spectrum::find(int index) const {
  for (const auto &m : modes)
    if (m.index() == index)
      return &m;
  return nullptr;
}

Spectrum find_levels(const BagConfig &cfg, double e_min, double e_max,
                     double tol) {
  LevelSearch search;
  search.root_tol = tol;
  return find_levels(cfg, e_min, e_max, search);
}

namespace {

struct Probe {
  double eps;
  double mismatch;
  double winding;
};

// Number of integers in the half-open range (w0, w1] crossed by the winding.
long crossings(double w0, double w1) {
  return static_cast<long>(std::floor(w1)) - static_cast<long>(std::floor(w0));
}

} // namespace

Spectrum find_levels(const BagConfig &cfg, double e_min, double e_max,
                     const LevelSearch &search) {
  if (!std::isfinite(e_min) || !std::isfinite(e_max) || !(e_min < e_max))
    throw DomainError("find_levels: need finite e_min < e_max");
  if (!(search.root_tol > 0.0))
    throw DomainError("find_levels: root tolerance must be > 0");

  const double a = cfg.a();
  ShootOptions base;
  base.tol = search.integrator_tol;
  base.direction = search.direction;
  auto probe = [&](double eps) {
    const auto r = shoot(eps, cfg, base);
    return Probe{eps, r.mismatch, r.winding};
  };

  Spectrum spectrum;
  spectrum.e_min = e_min;
  spectrum.e_max = e_max;
  spectrum.root_tol = search.root_tol;
  const auto intervals = static_cast<std::size_t>(
      std::ceil((e_max - e_min) / (pi / (8.0 * a))));
  const double h = (e_max - e_min) / double(intervals);
  spectrum.bracket_grid = h;

  std::vector<Probe> scan(intervals + 1);
  parallel_for(scan.size(), [&](std::size_t i) {
    const double eps = i == intervals ? e_max : e_min + double(i) * h;
    scan[i] = probe(eps);
  });
  const Probe zero = probe(0.0);
  spectrum.shots = scan.size() + 1;

  // Collect brackets, subdividing where the sign count and winding disagree.
  std::vector<std::pair<Probe, Probe>> brackets;
  std::vector<double> exact_roots;
  auto examine = [&](auto &&self, const Probe &lo, const Probe &hi,
                     int depth) -> void {
    const long expected = crossings(lo.winding, hi.winding);
    const bool sign_change = lo.mismatch * hi.mismatch < 0.0;
    if (expected == 0 && !sign_change)
      return;
    if (expected == 1 && sign_change) {
      brackets.emplace_back(lo, hi);
      return;
    }
    if (depth > 12) {
      std::ostringstream os;
      os.precision(17);
      os << "find_levels: bracket [" << lo.eps << ", " << hi.eps
         << "] holds " << expected << " level(s) by winding but sign change="
         << sign_change;
      throw ConsistencyError(os.str());
    }
    const Probe mid = probe(0.5 * (lo.eps + hi.eps));
    ++spectrum.shots;
    if (mid.mismatch == 0.0) {
      exact_roots.push_back(mid.eps);
      return;
    }
    self(self, lo, mid, depth + 1);
    self(self, mid, hi, depth + 1);
  };
  for (std::size_t i = 0; i < intervals; ++i) {
    if (scan[i].mismatch == 0.0 && i > 0)
      exact_roots.push_back(scan[i].eps);
    examine(examine, scan[i], scan[i + 1], 0);
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t i) {
    const auto &[lo, hi] = brackets[i];
    std::uintmax_t iterations = 200;
    const double tol = search.root_tol;
    const auto [left, right] = boost::math::tools::toms748_solve(
        [&](double eps) { return shoot(eps, cfg, base).mismatch; }, lo.eps,
        hi.eps, lo.mismatch, hi.mismatch,
        [tol](double x, double y) { return std::abs(y - x) < tol; },
        iterations);
    roots[i] = 0.5 * (left + right);
  });
  roots.insert(roots.end(), exact_roots.begin(), exact_roots.end());
  std::sort(roots.begin(), roots.end());

  for (std::size_t i = 1; i < roots.size(); ++i)
    if (!(roots[i] - roots[i - 1] > 1e-9))
      throw ConsistencyError("find_levels: two roots closer than 1e-9");

  if (cfg.massless()) {
    const int predicted = massless_level_count(a, e_min, e_max);
    if (predicted != int(roots.size()))
      throw ConsistencyError(
          "find_levels: found " + std::to_string(roots.size()) +
          " massless levels, the analytic spectrum has " +
          std::to_string(predicted));
  }

  // first level above zero has the smallest integer winding above w(0)
  const long first_positive = static_cast<long>(std::floor(zero.winding)) + 1;
  std::vector<int> labels(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double w = shoot(roots[i], cfg, base).winding;
    labels[i] = static_cast<int>(std::lround(w) - first_positive);
  }
  spectrum.shots += roots.size();

  double e_scale = std::max(std::abs(e_min), std::abs(e_max));
  auto grid = std::make_shared<const SampleGrid>(
      rule_for_phase(a, mode_phase_budget(cfg, e_scale)));
  std::vector<double> points(grid->points().begin(), grid->points().end());
  ShootOptions sample_opts = base;
  sample_opts.output = points;
  if (search.direction == Direction::right_to_left)
    std::reverse(sample_opts.output.begin(), sample_opts.output.end());

  std::vector<std::optional<Mode>> built(roots.size());
  parallel_for(roots.size(), [&](std::size_t i) {
    const auto r = shoot(roots[i], cfg, sample_opts);
    std::vector<double> u(points.size()), v(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const auto q = search.direction == Direction::left_to_right
                         ? p
                         : points.size() - 1 - p;
      u[p] = r.samples[q].u;
      v[p] = r.samples[q].v;
    }
    const auto &rule = grid->rule();
    auto norm2 = [&] {
      double s = 0.0;
      for (std::size_t k = 0; k < rule.nodes().size(); ++k) {
        const auto p = SampleGrid::gauss_point(k);
        s += rule.weights()[k] * (u[p] * u[p] + v[p] * v[p]);
      }
      return s;
    };
    const double scale = (u.front() < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2());
    for (std::size_t p = 0; p < points.size(); ++p) {
      u[p] *= scale;
      v[p] *= scale;
    }
    const double residual = std::abs(norm2() - 1.0);
    built[i].emplace(labels[i], roots[i], cfg,
                     std::make_shared<SampledField>(grid, std::move(u), std::move(v)),
                     residual);
  });
  spectrum.shots += roots.size();
  spectrum.modes.reserve(built.size());
  for (auto &m : built)
    spectrum.modes.push_back(std::move(*m));
  return spectrum;
}

double exact_shift(const BagConfig &cfg, int level) {
  if (cfg.lambda() == 0.0)
    return 0.0;

  const double a = cfg.a();
  // |<V>| <= |lambda| a bounds how far any level can move.
  const double reach = std::abs(massless_level(a, level)) + pi / a + cfg.mass() +
                       std::abs(cfg.lambda()) * a;
  LevelSearch search;
  search.root_tol = 1e-13;

  auto tracked_energy = [&](const BagConfig &c) {
    const auto spectrum = find_levels(c, -reach, reach, search);
    const auto energies = spectrum.energies();
    const auto first_positive = std::upper_bound(energies.begin(), energies.end(), 0.0);
    const auto positives = energies.end() - first_positive;
    const auto negatives = first_positive - energies.begin();
    const Mode *mode = spectrum.find(level);
    if (!mode)
      throw ConsistencyError("exact_shift: level " + std::to_string(level) +
                             " not found");
    const long rank = mode->energy() > 0.0
                          ? std::distance(first_positive,
                                          std::lower_bound(first_positive, energies.end(),
                                                           mode->energy()))
                          : -1 - std::distance(std::upper_bound(energies.begin(),
                                                                first_positive,
                                                                mode->energy()),
                                               first_positive);
    if (rank != level || (level >= 0 && positives <= level) ||
        (level < 0 && negatives < -level))
      throw ConsistencyError("exact_shift: level " + std::to_string(level) +
                             " changed sign class (level crossing at " +
                             describe(mode->energy(), c) + ")");
    return mode->energy();
  };
  return tracked_energy(cfg) - tracked_energy(cfg.unperturbed());
}

} // namespace diracbag
