// Acceptance suite: one PASS/FAIL line per criterion, indented info lines
// with supporting numbers. Exits nonzero if any criterion fails.
#include "diracbag/bagmodel.hpp"
#include "diracbag/oracle.hpp"
#include "diracbag/perturb.hpp"
#include "diracbag/shooting.hpp"
#include "reference_values.hpp"
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace diracbag;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char *format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Energy of each labelled level, keyed by label - lo.
std::vector<double> by_label(const Spectrum &s, int lo, int hi) {
  std::vector<double> out(std::size_t(hi - lo + 1), NAN);
  for (const auto &m : s.modes)
    if (m.index() >= lo && m.index() <= hi)
      out[std::size_t(m.index() - lo)] = m.energy();
  return out;
}

Outcome analytic_spectrum() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto closed = massless_levels(1.0, -20, 20);
  const auto shot = find_levels(BagConfig{1.0, 0.0, 0.0}, -10 * pi, 10.5 * pi);
  const auto found = by_label(shot, -20, 20);
  double worst_closed = 0.0, worst_shot = 0.0;
  for (int n = -20; n <= 20; ++n) {
    const double exact = (2 * n + 1) * pi / 4;
    worst_closed = std::max(worst_closed, std::abs(closed[std::size_t(n + 20)] - exact));
    const double e = found[std::size_t(n + 20)];
    worst_shot = std::isnan(e) ? INFINITY : std::max(worst_shot, std::abs(e - exact));
  }
  const double t = seconds_since(t0);
  o.require(shot.modes.size() == 41, fmt("%zu levels found, expected 41", shot.modes.size()));
  o.require(worst_closed < 1e-9, fmt("closed form off by %.3g", worst_closed));
  o.require(worst_shot < 1e-9, fmt("shooting off by %.3g", worst_shot));
  o.require(t < 5.0, fmt("took %.2f s", t));
  if (o.pass)
    o.detail = fmt("max deviation %.2e (closed form), %.2e (shooting), %.2f s", worst_closed,
                   worst_shot, t);
  return o;
}

Outcome lambda_independence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto flat = by_label(find_levels(BagConfig{1.0, 0.0, 0.0}, -5.0, 5.0), -3, 2);
  double worst_level = 0.0, worst_shift = 0.0;
  for (double lam : {0.1, 1.0, 5.0}) {
    const BagConfig cfg{1.0, 0.0, lam};
    const auto s = find_levels(cfg, -5.0, 5.0);
    o.require(s.modes.size() == flat.size(), fmt("lambda=%g: %zu levels", lam, s.modes.size()));
    const auto tilted = by_label(s, -3, 2);
    for (std::size_t i = 0; i < flat.size(); ++i)
      worst_level = std::max(worst_level, std::abs(tilted[i] - flat[i]));
    for (int n = -3; n <= 2; ++n)
      worst_shift = std::max(worst_shift, std::abs(exact_shift(cfg, n)));
  }
  const double t = seconds_since(t0);
  o.require(worst_level < 1e-8, fmt("levels moved by %.3g", worst_level));
  o.require(worst_shift < 1e-8, fmt("exact shift %.3g", worst_shift));
  o.require(t < 30.0, fmt("took %.2f s", t));
  if (o.pass)
    o.detail = fmt("max level change %.2e, max |W_exact| %.2e, %.2f s", worst_level, worst_shift, t);
  return o;
}

Outcome feynman_vanishes() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_scaled = 0.0;
  for (const BagConfig cfg : {BagConfig{1.0, 0.0, 1.0}, BagConfig{2.0, 0.0, 0.5}}) {
    const auto table = coupling_table(cfg.unperturbed(), 0, 2000);
    const auto s = second_order(table, cfg.lambda(), Prescription::feynman,
                                CutoffScheme::symmetric, default_tolerance(cfg));
    const double scale = cfg.lambda() * cfg.lambda() * std::pow(cfg.a(), 3);
    for (const auto &p : s.partial_sums)
      worst_scaled = std::max(worst_scaled, std::abs(p.value) / scale);
    o.require(s.partial_sums.size() == 2000, "missing partial sums");
  }
  const double t = seconds_since(t0);
  o.require(worst_scaled < 1e-10, fmt("max |S_N|/(lambda^2 a^3) = %.3g", worst_scaled));
  o.require(t < 60.0, fmt("took %.2f s", t));
  if (o.pass)
    o.detail = fmt("max |S_N|/(lambda^2 a^3) over N <= 2000: %.2e, %.2f s", worst_scaled, t);
  return o;
}

// <0|x|k> from oracle eigenvectors, trapezoidal rule, v on midpoints.
double discrete_x(const oracle::DiscreteOperator &op, const oracle::DiscreteMode &j,
                  const oracle::DiscreteMode &k) {
  double sum = 0.0;
  const auto n = std::size_t(op.n_cells);
  for (std::size_t i = 0; i <= n; ++i)
    sum += ((i == 0 || i == n) ? op.h / 2 : op.h) * op.nodes[i] * j.u[i] * k.u[i];
  for (std::size_t i = 0; i < n; ++i)
    sum += op.h * (op.nodes[i] + op.h / 2) * j.v[i] * k.v[i];
  return sum;
}

Outcome pauli_nonzero() {
  Outcome o;
  const BagConfig cfg{1.0, 0.0, 1.0};
  const auto table = coupling_table(cfg.unperturbed(), 0, 2000);
  const auto s = second_order(table, 1.0, Prescription::pauli_respecting,
                              CutoffScheme::symmetric, 1e-9);
  const double w1000 = s.partial_sums[999].value, w2000 = s.partial_sums[1999].value;
  const double residual = std::abs(w2000 - w1000);
  o.require(residual < 1e-9, fmt("Cauchy residual %.3g", residual));
  o.require(w2000 < 0.0 && std::abs(w2000) > 1e-3, fmt("W_I = %.17g", w2000));
  o.require(std::abs(w2000 - ref::w_pauli_massless) < 1e-12,
            fmt("W_I differs from the frozen value by %.3g", w2000 - ref::w_pauli_massless));

  // independent check of the truncated sum through the finite-difference
  // eigenvectors (energies and couplings both from the oracle)
  const int k_max = 40;
  const auto op = oracle::discretize(cfg.unperturbed(), 4000);
  const auto modes = oracle::eigen(op, 0.0, (2 * k_max + 2) * pi / 4);
  double oracle_sum = 0.0, closed_sum = 0.0;
  for (std::size_t k = 1; k < modes.size() && modes[k].index <= k_max; ++k) {
    const double x = discrete_x(op, modes[0], modes[k]);
    oracle_sum += x * x / (modes[0].energy - modes[k].energy);
  }
  closed_sum = s.partial_sums[k_max - 1].value;
  const double rel = std::abs(oracle_sum - closed_sum) / std::abs(closed_sum);
  o.require(modes.size() > std::size_t(k_max) && rel < 1e-4,
            fmt("oracle cross-check off by %.3g relative", rel));
  o.info.push_back(fmt("S_1000 = %.17g, S_2000 = %.17g", w1000, w2000));
  o.info.push_back(fmt("oracle (N=4000) sum to k=%d: %.12g vs closed form %.12g (rel %.2e)",
                       k_max, oracle_sum, closed_sum, rel));
  if (o.pass)
    o.detail = fmt("W_I = %.15g, residual %.2e", w2000, residual);
  return o;
}

Outcome central_verdict() {
  Outcome o;
  const auto r = compare(BagConfig{1.0, 0.0, 1.0}, 0, 2000);
  const double w_exact = r.w_exact.value_or(NAN);
  const double w_I = r.w_first + r.find(Prescription::pauli_respecting)->value;
  const double w_II = r.w_first + r.find(Prescription::feynman)->value;
  o.require(std::abs(w_II - w_exact) < 1e-8, fmt("|W_II - W_exact| = %.3g", std::abs(w_II - w_exact)));
  o.require(std::abs(w_I - w_exact) > 1e-3, fmt("|W_I - W_exact| = %.3g", std::abs(w_I - w_exact)));
  if (o.pass)
    o.detail = fmt("W_exact = %.2e, |W_II - W_exact| = %.2e, |W_I - W_exact| = %.6f", w_exact,
                   std::abs(w_II - w_exact), std::abs(w_I - w_exact));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, worst_extrapolated = 0.0, worst_invariant = 0.0;
  for (auto [m, lam] : {std::pair{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}) {
    const BagConfig cfg{1.0, m, lam};
    const double reach = 8.0 + m + std::abs(lam);
    const auto shot = by_label(find_levels(cfg, -reach, reach), -5, 4);
    const auto fine = oracle::eigen(oracle::discretize(cfg, 4000), -reach, reach);
    const auto coarse = oracle::eigen(oracle::discretize(cfg, 2000), -reach, reach);
    double local = 0.0;
    int matched = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const int n = fine[i].index;
      if (n < -5 || n > 4)
        continue;
      ++matched;
      const double target = shot[std::size_t(n + 5)];
      const double err = std::abs(fine[i].energy - target);
      local = std::max(local, err);
      // second-order Richardson step from N = 2000 and 4000
      const double estimate = (fine[i].energy - coarse[i].energy) / 3.0;
      worst_extrapolated = std::max(worst_extrapolated,
                                    std::abs(fine[i].energy + estimate - target));
      worst_invariant = std::max(worst_invariant, err / std::max(1e-6, 10.0 * std::abs(estimate)));
    }
    o.require(matched == 10, fmt("(m=%g, lambda=%g): %d levels matched", m, lam, matched));
    o.info.push_back(fmt("(m=%g, lambda=%g): max |oracle - shooting| = %.2e", m, lam, local));
    worst = std::max(worst, local);
  }
  const double t = seconds_since(t0);
  o.require(worst < 1e-6, fmt("max |oracle(N=4000) - shooting| = %.3g > 1e-6", worst));
  o.require(t < 120.0, fmt("took %.2f s", t));
  o.info.push_back(fmt("Richardson (N=2000, 4000) max deviation: %.2e", worst_extrapolated));
  o.info.push_back(fmt("max error / max(1e-6, 10 x Richardson estimate): %.3f", worst_invariant));
  o.info.push_back(fmt("runtime %.2f s", t));
  if (o.pass)
    o.detail = fmt("max deviation %.2e", worst);
  return o;
}

Outcome perturbative_gradient() {
  Outcome o;
  auto residual = [](double lam) {
    const auto r = compare(BagConfig{1.0, 1.0, lam}, 0, 60);
    return std::abs(*r.w_exact - (r.w_first + r.find(Prescription::feynman)->value));
  };
  const double r2 = residual(1e-2), r3 = residual(1e-3);
  const double ratio = r2 / r3;
  o.require(ratio >= 500.0 && ratio <= 2000.0,
            fmt("residual ratio %.4g outside [500, 2000]", ratio));
  o.info.push_back(fmt("residual(1e-2) = %.4e, residual(1e-3) = %.4e", r2, r3));
  o.info.push_back(fmt("residual / lambda^4: %.5e and %.5e", r2 / 1e-8, r3 / 1e-12));
  o.info.push_back("the shift is even in lambda, so the residual is fourth order (ratio 1e4)");
  if (o.pass)
    o.detail = fmt("ratio %.4g", ratio);
  return o;
}

Outcome mode_quality() {
  Outcome o;
  double norm = 0.0, boundary = 0.0, ortho = 0.0, density_dev = 0.0, drift = 0.0;
  for (const BagConfig cfg : {BagConfig{1.0, 0.0, 0.0}, BagConfig{1.0, 0.0, 1.0},
                              BagConfig{1.0, 0.0, 5.0}, BagConfig{1.0, 1.0, 0.0},
                              BagConfig{1.0, 1.0, 1.0}, BagConfig{0.5, 2.0, -3.0}}) {
    const auto s = find_levels(cfg, -10.0, 10.0);
    const double a = cfg.a();
    for (std::size_t i = 0; i < s.modes.size(); ++i) {
      const auto &m = s.modes[i];
      norm = std::max(norm, std::abs(std::abs(overlap(m, m)) - 1.0));
      const auto left = m(-a), right = m(a);
      boundary = std::max({boundary, std::abs(right.u + right.v), std::abs(left.u - left.v)});
      for (std::size_t j = 0; j < i; ++j)
        ortho = std::max(ortho, std::abs(overlap(m, s.modes[j])));
      if (cfg.massless())
        for (int k = 0; k <= 1000; ++k)
          density_dev = std::max(density_dev,
                                 std::abs(density(m(-a + 2 * a * k / 1000.0)) - 1.0 / (2 * a)));
    }
  }
  for (int n = -10; n <= 10; ++n) {
    const auto m = closed_form_mode(n, 2.0, 1.0);
    for (int k = 0; k <= 1000; ++k)
      density_dev = std::max(density_dev, std::abs(density(eval_mode(m, -1.0 + k / 500.0)) - 0.5));
  }
  ShootOptions opts;
  for (int k = 0; k <= 400; ++k)
    opts.output.push_back(k == 400 ? 1.0 : -1.0 + k / 200.0);
  for (double eps : {0.1, pi / 4, 3.3, 9.0, 25.0, -7.0}) {
    const auto r = shoot(eps, BagConfig{1.0, 0.0, 0.0}, opts);
    const double start = r.samples[0].u * r.samples[0].u + r.samples[0].v * r.samples[0].v;
    for (const auto &p : r.samples)
      drift = std::max(drift, std::abs(p.u * p.u + p.v * p.v - start));
  }
  o.require(norm < 1e-10, fmt("normalization %.3g", norm));
  o.require(boundary < 1e-10, fmt("boundary residual %.3g", boundary));
  o.require(ortho < 1e-10, fmt("orthogonality %.3g", ortho));
  o.require(density_dev < 1e-10, fmt("density deviation %.3g", density_dev));
  o.require(drift < 1e-10, fmt("u^2+v^2 drift %.3g", drift));
  if (o.pass)
    o.detail = fmt("norm %.1e, boundary %.1e, overlap %.1e, density %.1e, drift %.1e", norm,
                   boundary, ortho, density_dev, drift);
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"analytic massless spectrum", analytic_spectrum},
      {"massless levels independent of lambda", lambda_independence},
      {"Feynman second-order sum vanishes", feynman_vanishes},
      {"Pauli-respecting second-order sum is nonzero", pauli_nonzero},
      {"only the Feynman sum matches the exact shift", central_verdict},
      {"finite-difference oracle matches shooting", oracle_equivalence},
      {"massive perturbative residual scaling", perturbative_gradient},
      {"mode quality", mode_quality},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    for (const auto &line : o.info)
      std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
