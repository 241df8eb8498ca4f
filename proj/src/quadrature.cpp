#include "diracbag/quadrature.hpp"
#include "diracbag/config.hpp"
#include "diracbag/errors.hpp"
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

namespace diracbag {

namespace {

using Gauss32 = boost::math::quadrature::gauss<double, 32>;

// Reference nodes on [-1, 1] in ascending order.
struct ReferenceRule {
  std::array<double, 32> nodes{};
  std::array<double, 32> weights{};
  // -1, nodes..., +1 with their barycentric weights
  std::array<double, 34> interp_nodes{};
  std::array<double, 34> interp_weights{};

  ReferenceRule() {
    const auto &x = Gauss32::abscissa();
    const auto &w = Gauss32::weights();
    // boost stores the 16 non-negative abscissae in increasing order
    for (std::size_t i = 0; i < 16; ++i) {
      nodes[15 - i] = -x[i];
      weights[15 - i] = w[i];
      nodes[16 + i] = x[i];
      weights[16 + i] = w[i];
    }
    interp_nodes[0] = -1.0;
    std::copy(nodes.begin(), nodes.end(), interp_nodes.begin() + 1);
    interp_nodes[33] = 1.0;
    for (std::size_t j = 0; j < 34; ++j) {
      double prod = 1.0;
      for (std::size_t k = 0; k < 34; ++k)
        if (k != j)
          prod *= 2.0 * (interp_nodes[j] - interp_nodes[k]);
      interp_weights[j] = 1.0 / prod;
    }
  }
};

const ReferenceRule &reference() {
  static const ReferenceRule rule;
  return rule;
}

} // namespace

CompositeRule::CompositeRule(double lo, double hi, int panels)
    : m_lo(lo), m_hi(hi), m_panels(panels) {
  if (!(hi > lo) || panels < 1)
    throw DomainError("CompositeRule: need lo < hi and at least one panel");
  const auto &ref = reference();
  const double width = (hi - lo) / panels;
  m_nodes.reserve(std::size_t(panels) * points_per_panel);
  m_weights.reserve(m_nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double left = lo + p * width;
    const double mid = left + 0.5 * width;
    for (int k = 0; k < points_per_panel; ++k) {
      m_nodes.push_back(mid + 0.5 * width * ref.nodes[k]);
      m_weights.push_back(0.5 * width * ref.weights[k]);
    }
  }
}

double mode_phase_budget(const BagConfig &cfg, double eps) {
  const double a = cfg.a();
  return std::abs(cfg.lambda()) * a * a + 2.0 * (std::abs(eps) + cfg.mass()) * a;
}

CompositeRule rule_for_phase(double a, double phase) {
  if (!(a > 0.0) || !std::isfinite(phase))
    throw DomainError("rule_for_phase: invalid arguments");
  const int panels =
      1 + static_cast<int>(std::floor(std::abs(phase) / std::numbers::pi));
  return CompositeRule(-a, a, panels);
}

SampleGrid::SampleGrid(CompositeRule rule) : m_rule(std::move(rule)) {
  const auto nodes = m_rule.nodes();
  const int panels = m_rule.panels();
  const double width = m_rule.panel_width();
  m_points.reserve(std::size_t(panels) * stride + 1);
  for (int p = 0; p < panels; ++p) {
    m_points.push_back(m_rule.lo() + p * width);
    for (int k = 0; k < CompositeRule::points_per_panel; ++k)
      m_points.push_back(nodes[std::size_t(p) * CompositeRule::points_per_panel + k]);
  }
  m_points.push_back(m_rule.hi());
}

std::size_t SampleGrid::locate(double x,
                               std::array<double, stride + 1> &weights) const {
  const auto &ref = reference();
  const double width = m_rule.panel_width();
  auto panel = static_cast<long>(std::floor((x - m_rule.lo()) / width));
  panel = std::clamp(panel, 0L, long(m_rule.panels()) - 1);
  const double mid = m_rule.lo() + (panel + 0.5) * width;
  const double t = (x - mid) / (0.5 * width);

  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (t == ref.interp_nodes[j]) {
      weights.fill(0.0);
      weights[j] = 1.0;
      return std::size_t(panel);
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    weights[j] = ref.interp_weights[j] / (t - ref.interp_nodes[j]);
    denom += weights[j];
  }
  for (auto &w : weights)
    w /= denom;
  return std::size_t(panel);
}

} // namespace diracbag
