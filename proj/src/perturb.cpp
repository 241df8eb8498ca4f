#include "diracbag/perturb.hpp"
#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include "diracbag/parallel.hpp"
#include "diracbag/shooting.hpp"
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace diracbag {

using std::numbers::pi;

std::string_view to_string(Prescription p) {
  return p == Prescription::feynman ? "feynman" : "pauli";
}

std::string_view to_string(CutoffScheme s) {
  return s == CutoffScheme::symmetric ? "symmetric" : "asymmetric";
}

Prescription parse_prescription(std::string_view text) {
  if (text == "feynman")
    return Prescription::feynman;
  if (text == "pauli")
    return Prescription::pauli_respecting;
  throw UsageError("unknown prescription '" + std::string(text) +
                   "' (expected feynman|pauli)");
}

cplx x_matrix_element(const Mode &j, const Mode &k) {
  if (j.config().lambda() != 0.0 || k.config().lambda() != 0.0)
    throw UsageError("x_matrix_element: modes must belong to the lambda = 0 bag");
  return weighted_overlap(j, k, [](double x) { return x; });
}

namespace {

// Unperturbed modes with labels lo..hi, in label order.
std::vector<Mode> unperturbed_modes(const BagConfig &cfg0, int lo, int hi,
                                    std::string_view &source) {
  std::vector<Mode> modes;
  modes.reserve(std::size_t(hi - lo) + 1);
  if (cfg0.massless()) {
    source = "closed-form";
    for (int n = lo; n <= hi; ++n)
      modes.push_back(to_mode(closed_form_mode(n, 0.0, cfg0.a())));
    return modes;
  }

  source = "shooting";
  const double a = cfg0.a();
  double reach = std::max(std::abs(massless_level(a, lo)),
                          std::abs(massless_level(a, hi))) +
                 cfg0.mass() + pi / a;
  for (int attempt = 0; attempt < 6; ++attempt, reach *= 1.25) {
    const auto spectrum = find_levels(cfg0, -reach, reach);
    bool complete = true;
    for (int n = lo; n <= hi && complete; ++n)
      complete = spectrum.find(n) != nullptr;
    if (!complete)
      continue;
    for (int n = lo; n <= hi; ++n)
      modes.push_back(*spectrum.find(n));
    return modes;
  }
  throw DomainError("unperturbed spectrum does not cover levels " +
                    std::to_string(lo) + ".." + std::to_string(hi));
}

} // namespace

CouplingTable coupling_table(const BagConfig &cfg, int level, int cutoff) {
  if (cutoff < 1)
    throw DomainError("coupling_table: cutoff must be >= 1");
  const BagConfig cfg0 = cfg.unperturbed();
  CouplingTable table{cfg0, level, cutoff, 0.0, 0.0, {}, {}, {}, {}, {}};
  const auto modes =
      unperturbed_modes(cfg0, level - cutoff, level + cutoff, table.source);
  const Mode &ref = modes[std::size_t(cutoff)];
  table.energy = ref.energy();
  table.diagonal = x_matrix_element(ref, ref);

  const auto n = std::size_t(cutoff);
  table.energy_up.resize(n);
  table.energy_down.resize(n);
  table.x_up.resize(n);
  table.x_down.resize(n);
  parallel_for(2 * n, [&](std::size_t i) {
    const std::size_t k = i / 2 + 1;
    const bool up = i % 2 == 0;
    const Mode &other = modes[up ? n + k : n - k];
    (up ? table.energy_up : table.energy_down)[k - 1] = other.energy();
    (up ? table.x_up : table.x_down)[k - 1] = x_matrix_element(ref, other);
  });
  return table;
}

double default_tolerance(const BagConfig &cfg) {
  const double a = cfg.a();
  return 1e-9 * cfg.lambda() * cfg.lambda() * a * a * a;
}

double first_order(const BagConfig &cfg, int level) {
  if (cfg.lambda() == 0.0)
    return 0.0;
  std::string_view source;
  const auto modes = unperturbed_modes(cfg.unperturbed(), level, level, source);
  return cfg.lambda() * x_matrix_element(modes[0], modes[0]).real();
}

SecondOrderResult second_order(const CouplingTable &table, double lambda,
                               Prescription prescription, CutoffScheme scheme,
                               double tol) {
  const auto n = std::size_t(table.cutoff);
  const double scale = lambda * lambda;
  auto term = [&](double energy, cplx x) {
    return std::norm(x) / (table.energy - energy);
  };
  // Occupied = negative-energy labels. Only downward steps can reach them.
  auto allowed_down = [&](std::size_t k) {
    return prescription == Prescription::feynman ||
           table.level - int(k) >= 0;
  };

  std::vector<double> up(n), down(n);
  for (std::size_t k = 1; k <= n; ++k) {
    up[k - 1] = term(table.energy_up[k - 1], table.x_up[k - 1]);
    down[k - 1] = allowed_down(k) ? term(table.energy_down[k - 1], table.x_down[k - 1]) : 0.0;
  }

  SecondOrderResult result{prescription, scheme, 0.0, {}, 0.0, tol, false};
  result.partial_sums.reserve(n);
  if (scheme == CutoffScheme::symmetric) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      sum += up[k - 1] + down[k - 1];
      result.partial_sums.push_back({int(k), scale * sum});
    }
  } else {
    // S_N = sum_{k<=N/2} (up_k + down_k) + sum_{N/2<k<=N} up_k
    std::vector<double> paired(n + 1, 0.0), upper(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      paired[k] = paired[k - 1] + (up[k - 1] + down[k - 1]);
      upper[k] = upper[k - 1] + up[k - 1];
    }
    for (std::size_t cut = 1; cut <= n; ++cut) {
      const double sum = paired[cut / 2] + (upper[cut] - upper[cut / 2]);
      result.partial_sums.push_back({int(cut), scale * sum});
    }
  }
  result.value = result.partial_sums.back().value;
  const auto half = std::max<std::size_t>(n / 2, 1);
  result.cauchy_residual =
      std::abs(result.value - result.partial_sums[half - 1].value);
  result.converged = result.cauchy_residual <= tol;
  return result;
}

const SecondOrderResult *ShiftReport::find(Prescription p) const {
  for (const auto &s : second)
    if (s.prescription == p)
      return &s;
  return nullptr;
}

const ShiftReport::Verdict *ShiftReport::verdict(Prescription p) const {
  for (const auto &v : verdicts)
    if (v.prescription == p)
      return &v;
  return nullptr;
}

namespace {

void check_second_order_args(int level, int cutoff) {
  if (level != 0)
    throw DomainError("second_order: only the one-particle ground state "
                      "(level 0) is supported");
  if (cutoff < 4)
    throw DomainError("second_order: cutoff must be >= 4");
}

double resolve_tol(const BagConfig &cfg, double tol) {
  return tol > 0.0 ? tol : default_tolerance(cfg);
}

} // namespace

ShiftReport second_order(const BagConfig &cfg, int level,
                         Prescription prescription, int cutoff, double tol) {
  check_second_order_args(level, cutoff);
  const auto table = coupling_table(cfg, level, cutoff);
  ShiftReport report{cfg, level, cutoff, cfg.lambda() * table.diagonal.real(),
                     {}, std::nullopt, {}, 0.0};
  report.second.push_back(second_order(table, cfg.lambda(), prescription,
                                       CutoffScheme::symmetric,
                                       resolve_tol(cfg, tol)));
  return report;
}

ShiftReport compare(const BagConfig &cfg, int level, int cutoff, double tol,
                    double agreement_tol) {
  check_second_order_args(level, cutoff);
  const auto table = coupling_table(cfg, level, cutoff);
  const double t = resolve_tol(cfg, tol);
  ShiftReport report{cfg, level, cutoff, cfg.lambda() * table.diagonal.real(),
                     {}, exact_shift(cfg, level), {}, agreement_tol};
  for (auto p : {Prescription::pauli_respecting, Prescription::feynman}) {
    auto s = second_order(table, cfg.lambda(), p, CutoffScheme::symmetric, t);
    const double deviation = std::abs(report.w_first + s.value - *report.w_exact);
    std::optional<bool> agrees;
    if (s.converged)
      agrees = deviation < agreement_tol;
    report.verdicts.push_back({p, deviation, agrees});
    report.second.push_back(std::move(s));
  }
  return report;
}

Extrapolation extrapolate_pauli(const BagConfig &cfg, int base_cutoff) {
  if (base_cutoff < 4)
    throw DomainError("extrapolate_pauli: base cutoff must be >= 4");
  const auto table = coupling_table(cfg, 0, 4 * base_cutoff);
  const auto s = second_order(table, cfg.lambda(), Prescription::pauli_respecting,
                              CutoffScheme::symmetric, 0.0);
  Extrapolation ex{};
  for (int c : {base_cutoff, 2 * base_cutoff, 4 * base_cutoff})
    ex.samples.push_back(s.partial_sums[std::size_t(c) - 1]);
  const double s1 = ex.samples[0].value, s2 = ex.samples[1].value,
               s4 = ex.samples[2].value;
  const double d1 = s2 - s1, d2 = s4 - s2;
  ex.limit = s4;
  ex.order = std::numeric_limits<double>::quiet_NaN();
  if (d1 != 0.0 && d2 != 0.0 && d1 / d2 > 1.0) {
    ex.order = std::log2(d1 / d2);
    ex.limit = s4 + d2 / (std::pow(2.0, ex.order) - 1.0);
  }
  return ex;
}

} // namespace diracbag
