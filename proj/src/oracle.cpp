#include "diracbag/oracle.hpp"
#include "diracbag/errors.hpp"
#include <algorithm>
#include <cmath>
#include <lapacke.h>

namespace diracbag::oracle {

DiscreteOperator discretize(const BagConfig &cfg, int n_cells) {
  if (n_cells < 16)
    throw DomainError("discretize: need at least 16 cells");

  const int n = n_cells;
  const double a = cfg.a();
  const double h = 2.0 * a / n;
  const double lam = cfg.lambda();
  const double m = cfg.mass();

  DiscreteOperator op{cfg, n, "staggered-forward-backward", h, {}, {}, {}, {}};
  const std::size_t dim = 2 * std::size_t(n) + 1;
  op.diag.resize(dim);
  op.offdiag.resize(dim - 1);
  op.weights.resize(dim);
  op.nodes.resize(std::size_t(n) + 1);

  for (int i = 0; i <= n; ++i) {
    op.nodes[i] = i == n ? a : -a + i * h;
    const bool wall = i == 0 || i == n;
    op.weights[2 * i] = wall ? 0.5 * h : h;
    // wall rows pick up 2/h from v(-a) = u_0 and v(a) = -u_N
    op.diag[2 * i] = lam * op.nodes[i] + m + (wall ? 2.0 / h : 0.0);
  }
  for (int i = 0; i < n; ++i) {
    const double mid = -a + (i + 0.5) * h;
    op.weights[2 * i + 1] = h;
    op.diag[2 * i + 1] = lam * mid - m;
  }
  // W H is symmetric with entries -1 (u_i, v_i) and +1 (v_i, u_{i+1});
  // S_jk = (W H)_jk / sqrt(W_j W_k)
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    const double wh = (j % 2 == 0) ? -1.0 : 1.0;
    op.offdiag[j] = wh / std::sqrt(op.weights[j] * op.weights[j + 1]);
  }
  return op;
}

std::vector<double> DiscreteOperator::dense() const {
  const auto n = dimension();
  std::vector<double> s(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i * n + i] = diag[i];
    if (i + 1 < n) {
      s[i * n + i + 1] = offdiag[i];
      s[(i + 1) * n + i] = offdiag[i];
    }
  }
  return s;
}

std::size_t count_below(const DiscreteOperator &op, double e) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : op.offdiag[i - 1] * op.offdiag[i - 1];
    q = op.diag[i] - e - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0)
      q = -1e-300;
    if (q < 0.0)
      ++count;
  }
  return count;
}

std::vector<DiscreteMode> eigen(const DiscreteOperator &op, double e_min,
                                double e_max) {
  if (!(e_min < e_max))
    throw DomainError("eigen: need e_min < e_max");
  const auto n = static_cast<lapack_int>(op.dimension());
  std::vector<double> d = op.diag;
  std::vector<double> e = op.offdiag;
  e.push_back(0.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  const auto expected = count_below(op, e_max) - count_below(op, e_min);
  const auto cols = std::max<std::size_t>(expected + 2, 1);
  std::vector<double> z(std::size_t(n) * cols);
  std::vector<lapack_int> support(2 * cols);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'V', n, d.data(), e.data(), e_min, e_max, 0, 0,
      LAPACKE_dlamch('S'), &found, w.data(), z.data(), n, support.data());
  if (info != 0)
    throw NumericError("eigen: LAPACK dstevr failed with info=" +
                       std::to_string(info));
  if (std::size_t(found) > cols)
    throw NumericError("eigen: eigenvalue count exceeded Sturm estimate");

  const auto negatives = static_cast<long>(count_below(op, 0.0));
  // dstevr returns the eigenvalues in (e_min, e_max]
  const auto below = static_cast<long>(count_below(op, e_min));
  const auto n_cells = std::size_t(op.n_cells);
  std::vector<DiscreteMode> out;
  out.reserve(std::size_t(found));
  for (lapack_int k = 0; k < found; ++k) {
    const double *y = z.data() + std::size_t(k) * std::size_t(n);
    DiscreteMode mode{static_cast<int>(below + k - negatives), w[k], {}, {}};
    mode.u.resize(n_cells + 1);
    mode.v.resize(n_cells);
    const double sign = y[0] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i <= n_cells; ++i)
      mode.u[i] = sign * y[2 * i] / std::sqrt(op.weights[2 * i]);
    for (std::size_t i = 0; i < n_cells; ++i)
      mode.v[i] = sign * y[2 * i + 1] / std::sqrt(op.weights[2 * i + 1]);
    out.push_back(std::move(mode));
  }
  return out;
}

double discrete_overlap(const DiscreteOperator &op, const DiscreteMode &j,
                        const DiscreteMode &k) {
  double s = 0.0;
  for (std::size_t i = 0; i < j.u.size(); ++i)
    s += op.weights[2 * i] * j.u[i] * k.u[i];
  for (std::size_t i = 0; i < j.v.size(); ++i)
    s += op.weights[2 * i + 1] * j.v[i] * k.v[i];
  return s;
}

namespace {

// Local cubic Lagrange interpolation on sorted, possibly non-uniform samples.
double cubic(const std::vector<double> &xs, const std::vector<double> &ys,
             double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  long hi = std::distance(xs.begin(), it);
  long first = std::clamp(hi - 2, 0L, long(xs.size()) - 4);
  double sum = 0.0;
  for (long j = first; j < first + 4; ++j) {
    double l = 1.0;
    for (long k = first; k < first + 4; ++k)
      if (k != j)
        l *= (x - xs[k]) / (xs[j] - xs[k]);
    sum += l * ys[j];
  }
  return sum;
}

class InterpolatedField final : public SpinorField {
public:
  InterpolatedField(const DiscreteOperator &op, const DiscreteMode &mode)
      : m_ux(op.nodes), m_u(mode.u) {
    const double a = op.cfg.a();
    m_vx.reserve(mode.v.size() + 2);
    m_v.reserve(mode.v.size() + 2);
    m_vx.push_back(-a);
    m_v.push_back(mode.u.front());
    for (std::size_t i = 0; i < mode.v.size(); ++i) {
      m_vx.push_back(-a + (double(i) + 0.5) * op.h);
      m_v.push_back(mode.v[i]);
    }
    m_vx.push_back(a);
    m_v.push_back(-mode.u.back());
  }

  Spinor at(double x) const override {
    return {cubic(m_ux, m_u, x), cubic(m_vx, m_v, x)};
  }

private:
  std::vector<double> m_ux, m_u, m_vx, m_v;
};

} // namespace

Mode to_mode(const DiscreteOperator &op, const DiscreteMode &mode) {
  return Mode(mode.index, mode.energy, op.cfg,
              std::make_shared<InterpolatedField>(op, mode),
              std::abs(discrete_overlap(op, mode, mode) - 1.0));
}

} // namespace diracbag::oracle
