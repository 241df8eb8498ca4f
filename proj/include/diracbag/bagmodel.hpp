#pragma once

#include "diracbag/mode.hpp"
#include <vector>

namespace diracbag {

/// eps_n = (2n + 1) pi / (4a), the massless bag spectrum. It does not
/// depend on the slope of the linear potential.
double massless_level(double a, int n);

/// Levels n_lo..n_hi inclusive, increasing. Throws DomainError if a <= 0 or
/// n_lo > n_hi.
std::vector<double> massless_levels(double a, int n_lo, int n_hi);

/// Number of massless levels strictly inside (e_min, e_max).
int massless_level_count(double a, double e_min, double e_max);

/// |exp(4 i eps a) + 1|, zero exactly on the massless spectrum.
double quantization_residual(double a, double eps);

/// Closed-form massless mode in the w_pm = u +- i v basis:
///   w_+(x) = C_+ exp(+i(lambda x^2/2 - eps x)),
///   w_-(x) = C_- exp(-i(lambda x^2/2 - eps x)).
struct ClosedFormMode {
  int index;
  cplx c_plus;
  cplx c_minus;
  double energy;
  double lambda;
  double a;
};

/// Normalized mode n for the massless bag with slope lambda. The phase is
/// fixed so that u(-a) is real and positive (then u and v are real).
ClosedFormMode closed_form_mode(int n, double lambda, double a);

/// (u, v) at x from u = (w_+ + w_-)/2, v = (w_+ - w_-)/(2i).
/// Throws DomainError if |x| > a.
Spinor eval_mode(const ClosedFormMode &mode, double x);

/// Wraps a closed-form mode as a Mode on BagConfig{a, 0, lambda}.
Mode to_mode(const ClosedFormMode &mode);

} // namespace diracbag
