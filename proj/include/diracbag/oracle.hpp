#pragma once

#include "diracbag/config.hpp"
#include "diracbag/mode.hpp"
#include <string>
#include <vector>

namespace diracbag::oracle {

/// Finite-difference realization of H = [[lambda x + m, -d/dx], [d/dx, lambda x - m]]
/// on N uniform cells. u lives on the N+1 nodes x_i = -a + i h, v on the N
/// cell midpoints. d/dx acting on u is the forward difference
/// (u_{i+1} - u_i)/h and -d/dx acting on v its adjoint backward difference,
/// so the pair carries no doubler. At the walls the half-cell derivative
/// uses v(-a) = u_0 and v(a) = -u_N directly.
///
/// Stored symmetrized, S = W^{1/2} H W^{-1/2} with W the trapezoidal
/// weights, in the interleaved ordering (u_0, v_0, u_1, ..., v_{N-1}, u_N)
/// where S is tridiagonal of dimension 2N + 1.
struct DiscreteOperator {
  BagConfig cfg;
  int n_cells;
  std::string scheme;
  double h;
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> weights; // trapezoidal weight of each unknown
  std::vector<double> nodes;   // u positions; v sits at the midpoints

  std::size_t dimension() const { return diag.size(); }
  /// Row-major dense copy of S.
  std::vector<double> dense() const;
};

/// Throws DomainError when n_cells < 16.
DiscreteOperator discretize(const BagConfig &cfg, int n_cells);

/// Number of eigenvalues strictly below e (Sturm sequence count).
std::size_t count_below(const DiscreteOperator &op, double e);

struct DiscreteMode {
  int index;
  double energy;
  std::vector<double> u; // at nodes
  std::vector<double> v; // at midpoints
};

/// Eigenpairs with energy in (e_min, e_max], ascending. Vectors are
/// normalized in the trapezoidal inner product with u(-a) > 0; labels
/// follow the bag convention (0 = lowest positive level).
/// Throws NumericError if LAPACK fails to converge.
std::vector<DiscreteMode> eigen(const DiscreteOperator &op, double e_min,
                                double e_max);

/// Trapezoidal inner product of two discrete spinors.
double discrete_overlap(const DiscreteOperator &op, const DiscreteMode &j,
                        const DiscreteMode &k);

/// Mode evaluated by local cubic interpolation of the grid values, with v
/// extended to the walls through the boundary condition.
Mode to_mode(const DiscreteOperator &op, const DiscreteMode &mode);

} // namespace diracbag::oracle
