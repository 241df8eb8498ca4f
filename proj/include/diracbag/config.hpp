#pragma once

namespace diracbag {

/// Physical parameters of the bag: half-width a, mass m and the slope of
/// the linear potential V(x) = lambda * x. Natural units (hbar = c = 1),
/// energies in 1/length. Immutable once constructed.
class BagConfig {
public:
  /// Throws DomainError unless a > 0, m >= 0 and all values are finite.
  BagConfig(double a, double mass, double lambda);

  double a() const { return m_a; }
  double mass() const { return m_mass; }
  double lambda() const { return m_lambda; }

  bool massless() const { return m_mass == 0.0; }

  /// Same bag with the potential switched off.
  BagConfig unperturbed() const { return BagConfig{m_a, m_mass, 0.0}; }
  BagConfig with_lambda(double lambda) const {
    return BagConfig{m_a, m_mass, lambda};
  }

  friend bool operator==(const BagConfig &, const BagConfig &) = default;

private:
  double m_a;
  double m_mass;
  double m_lambda;
};

} // namespace diracbag
