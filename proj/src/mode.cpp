#include "diracbag/mode.hpp"
#include "diracbag/errors.hpp"
#include <algorithm>
#include <cmath>
#include <string>

namespace diracbag {

SampledField::SampledField(std::shared_ptr<const SampleGrid> grid,
                           std::vector<double> u, std::vector<double> v)
    : m_grid(std::move(grid)), m_u(std::move(u)), m_v(std::move(v)) {
  if (!m_grid || m_u.size() != m_grid->points().size() ||
      m_v.size() != m_u.size())
    throw UsageError("SampledField: sample count does not match grid");
}

Spinor SampledField::at(double x) const {
  std::array<double, SampleGrid::stride + 1> w;
  const auto panel = m_grid->locate(x, w);
  const auto first = panel * SampleGrid::stride;
  double u = 0.0, v = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    u += w[j] * m_u[first + j];
    v += w[j] * m_v[first + j];
  }
  return {u, v};
}

Mode::Mode(int index, double energy, BagConfig cfg,
           std::shared_ptr<const SpinorField> field, double norm_residual)
    : m_index(index), m_energy(energy), m_cfg(cfg), m_field(std::move(field)),
      m_norm_residual(norm_residual) {
  if (!m_field)
    throw UsageError("Mode: null spinor field");
}

Spinor Mode::operator()(double x) const {
  const double a = m_cfg.a();
  // allow last-ulp overshoot from callers computing x = -a + i h
  if (!(std::abs(x) <= a * (1.0 + 1e-14)))
    throw DomainError("Mode: x = " + std::to_string(x) +
                      " lies outside [-a, a]");
  return m_field->at(std::clamp(x, -a, a));
}

double Mode::boundary_residual() const {
  const double a = m_cfg.a();
  const auto right = m_field->at(a);
  const auto left = m_field->at(-a);
  return std::max(std::abs(right.u + right.v), std::abs(left.u - left.v));
}

const SampledField *Mode::sampled() const {
  return dynamic_cast<const SampledField *>(m_field.get());
}

cplx weighted_overlap(const Mode &j, const Mode &k,
                      const std::function<double(double)> &weight) {
  if (!(j.config() == k.config()))
    throw UsageError("overlap: modes belong to different configurations");

  const auto *sj = j.sampled();
  const auto *sk = k.sampled();
  if (sj && sk && sj->grid() == sk->grid()) {
    const auto &rule = sj->grid()->rule();
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto p = SampleGrid::gauss_point(i);
      sum += weights[i] * weight(nodes[i]) *
             (sj->u()[p] * sk->u()[p] + sj->v()[p] * sk->v()[p]);
    }
    return sum;
  }

  const auto &cfg = j.config();
  const auto rule = rule_for_phase(cfg.a(), mode_phase_budget(cfg, j.energy()) +
                                                mode_phase_budget(cfg, k.energy()));
  return rule.integrate([&](double x) {
    const auto a = j.field().at(x);
    const auto b = k.field().at(x);
    return weight(x) * (std::conj(a.u) * b.u + std::conj(a.v) * b.v);
  });
}

cplx overlap(const Mode &j, const Mode &k) {
  return weighted_overlap(j, k, [](double) { return 1.0; });
}

} // namespace diracbag
