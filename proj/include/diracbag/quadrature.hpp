#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace diracbag {

class BagConfig;

/// Composite Gauss-Legendre rule on [lo, hi]: equal panels, 32 nodes each.
class CompositeRule {
public:
  static constexpr int points_per_panel = 32;

  CompositeRule(double lo, double hi, int panels);

  double lo() const { return m_lo; }
  double hi() const { return m_hi; }
  int panels() const { return m_panels; }
  double panel_width() const { return (m_hi - m_lo) / m_panels; }
  std::span<const double> nodes() const { return m_nodes; }
  std::span<const double> weights() const { return m_weights; }

  template <typename F> auto integrate(F &&f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < m_nodes.size(); ++i)
      sum += m_weights[i] * f(m_nodes[i]);
    return sum;
  }

private:
  double m_lo, m_hi;
  int m_panels;
  std::vector<double> m_nodes;
  std::vector<double> m_weights;
};

/// Upper bound on the total phase swept over [-a, a] by a bag mode of
/// energy eps: |lambda| a^2 + 2 (|eps| + m) a.
double mode_phase_budget(const BagConfig &cfg, double eps);

/// Rule over [-a, a] whose panels each advance the given total phase by
/// less than pi.
CompositeRule rule_for_phase(double a, double phase);

/// Sampling layout built on a CompositeRule. Per panel we keep the left
/// endpoint followed by the 32 Gauss nodes; the right boundary closes the
/// list. Panel p owns points [33 p, 33 p + 33] (34 points, shared ends),
/// which supports barycentric interpolation anywhere in the panel.
class SampleGrid {
public:
  static constexpr int stride = CompositeRule::points_per_panel + 1;

  explicit SampleGrid(CompositeRule rule);

  const CompositeRule &rule() const { return m_rule; }
  std::span<const double> points() const { return m_points; }

  /// Index into points() of the i-th Gauss node of the rule.
  static std::size_t gauss_point(std::size_t i) {
    const auto panel = i / CompositeRule::points_per_panel;
    const auto k = i % CompositeRule::points_per_panel;
    return panel * stride + 1 + k;
  }

  /// Panel containing x and the 34 interpolation weights for x within it.
  /// values[33 p + j] * weights[j] summed over j reproduces f(x).
  std::size_t locate(double x, std::array<double, stride + 1> &weights) const;

private:
  CompositeRule m_rule;
  std::vector<double> m_points;
};

} // namespace diracbag
