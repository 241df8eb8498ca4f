#pragma once

#include "diracbag/config.hpp"
#include "diracbag/quadrature.hpp"
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace diracbag {

using cplx = std::complex<double>;

/// Upper and lower spinor components at one point.
struct Spinor {
  cplx u;
  cplx v;
};

/// Something that can evaluate a spinor on [-a, a].
class SpinorField {
public:
  virtual ~SpinorField() = default;
  virtual Spinor at(double x) const = 0;
};

/// Real spinor samples on a shared SampleGrid, evaluated between samples by
/// per-panel barycentric interpolation.
class SampledField final : public SpinorField {
public:
  SampledField(std::shared_ptr<const SampleGrid> grid, std::vector<double> u,
               std::vector<double> v);

  Spinor at(double x) const override;

  const std::shared_ptr<const SampleGrid> &grid() const { return m_grid; }
  const std::vector<double> &u() const { return m_u; }
  const std::vector<double> &v() const { return m_v; }

private:
  std::shared_ptr<const SampleGrid> m_grid;
  std::vector<double> m_u, m_v;
};

/// One normalized single-particle eigenstate of the bag.
class Mode {
public:
  Mode(int index, double energy, BagConfig cfg,
       std::shared_ptr<const SpinorField> field, double norm_residual);

  int index() const { return m_index; }
  double energy() const { return m_energy; }
  const BagConfig &config() const { return m_cfg; }
  double norm_residual() const { return m_norm_residual; }
  const SpinorField &field() const { return *m_field; }

  /// Throws DomainError if |x| > a.
  Spinor operator()(double x) const;

  /// max(|u(a) + v(a)|, |u(-a) - v(-a)|)
  double boundary_residual() const;

  /// The sampled representation if this mode carries one, else nullptr.
  const SampledField *sampled() const;

private:
  int m_index;
  double m_energy;
  BagConfig m_cfg;
  std::shared_ptr<const SpinorField> m_field;
  double m_norm_residual;
};

/// int_{-a}^{a} weight(x) (u_j^* u_k + v_j^* v_k) dx on the module-wide
/// composite Gauss-Legendre rule. Modes sampled on one shared grid are
/// contracted directly; otherwise a rule is sized to the pair's phase.
/// Throws UsageError if the modes belong to different configurations.
cplx weighted_overlap(const Mode &j, const Mode &k,
                      const std::function<double(double)> &weight);

/// <j|k>
cplx overlap(const Mode &j, const Mode &k);

/// Probability density |u|^2 + |v|^2.
inline double density(const Spinor &s) { return std::norm(s.u) + std::norm(s.v); }

} // namespace diracbag
