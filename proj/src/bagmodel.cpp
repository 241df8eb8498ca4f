#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include <cmath>
#include <numbers>

namespace diracbag {

using std::numbers::pi;

namespace {

void require_width(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw DomainError("bag half-width a must be finite and > 0");
}

Spinor eval_unchecked(const ClosedFormMode &m, double x) {
  const double phase = 0.5 * m.lambda * x * x - m.energy * x;
  const cplx rot = std::polar(1.0, phase);
  const cplx w_plus = m.c_plus * rot;
  const cplx w_minus = m.c_minus * std::conj(rot);
  return {0.5 * (w_plus + w_minus), (w_plus - w_minus) / cplx{0.0, 2.0}};
}

class ClosedFormField final : public SpinorField {
public:
  explicit ClosedFormField(ClosedFormMode mode) : m_mode(mode) {}
  Spinor at(double x) const override { return eval_unchecked(m_mode, x); }

private:
  ClosedFormMode m_mode;
};

} // namespace

double massless_level(double a, int n) {
  require_width(a);
  return (2.0 * n + 1.0) * pi / (4.0 * a);
}

std::vector<double> massless_levels(double a, int n_lo, int n_hi) {
  require_width(a);
  if (n_lo > n_hi)
    throw DomainError("massless_levels: n_lo > n_hi");
  std::vector<double> out;
  out.reserve(std::size_t(n_hi - n_lo) + 1);
  for (int n = n_lo; n <= n_hi; ++n)
    out.push_back(massless_level(a, n));
  return out;
}

int massless_level_count(double a, double e_min, double e_max) {
  require_width(a);
  if (!(e_min < e_max))
    return 0;
  // eps_n in (e_min, e_max)  <=>  n in (n_lo, n_hi) with n = (4 a eps/pi - 1)/2
  const double lo = (4.0 * a * e_min / pi - 1.0) / 2.0;
  const double hi = (4.0 * a * e_max / pi - 1.0) / 2.0;
  int count = 0;
  for (auto n = static_cast<long>(std::floor(lo)); n <= static_cast<long>(std::ceil(hi)); ++n) {
    const double e = massless_level(a, int(n));
    if (e > e_min && e < e_max)
      ++count;
  }
  return count;
}

double quantization_residual(double a, double eps) {
  return std::abs(std::polar(1.0, 4.0 * eps * a) + 1.0);
}

ClosedFormMode closed_form_mode(int n, double lambda, double a) {
  require_width(a);
  if (!std::isfinite(lambda))
    throw DomainError("closed_form_mode: lambda must be finite");
  const double eps = massless_level(a, n);
  // C_+ = i C_- exp(-i theta) with C_- = conj(C_+) gives arg C_+ = pi/4 - theta/2;
  // this choice also makes u(-a) = cos(pi/4)/sqrt(2a) > 0.
  const double theta = lambda * a * a + 2.0 * eps * a;
  const cplx c_plus = std::polar(1.0 / std::sqrt(2.0 * a), pi / 4.0 - theta / 2.0);
  return {n, c_plus, std::conj(c_plus), eps, lambda, a};
}

Spinor eval_mode(const ClosedFormMode &mode, double x) {
  // same last-ulp slack as Mode::operator()
  if (!(std::abs(x) <= mode.a * (1.0 + 1e-14)))
    throw DomainError("eval_mode: |x| > a");
  return eval_unchecked(mode, x);
}

Mode to_mode(const ClosedFormMode &mode) {
  return Mode(mode.index, mode.energy, BagConfig{mode.a, 0.0, mode.lambda},
              std::make_shared<ClosedFormField>(mode), 0.0);
}

} // namespace diracbag
