#pragma once

#include "diracbag/config.hpp"
#include "diracbag/mode.hpp"
#include <optional>
#include <string_view>
#include <vector>

namespace diracbag {

/// Which intermediate states enter the second-order sum.
enum class Prescription {
  /// Method I: only unoccupied (positive-energy) levels; the Dirac sea is
  /// filled and transitions into it are blocked.
  pauli_respecting,
  /// Method II: every level except the initial one, occupied or not.
  feynman,
};

/// How the index cutoff grows when forming partial sums.
enum class CutoffScheme {
  /// Levels k and -k enter together: S_N sums 1 <= |k| <= N.
  symmetric,
  /// Positive levels up to N, negative levels only up to N/2.
  asymmetric,
};

std::string_view to_string(Prescription p);
std::string_view to_string(CutoffScheme s);
/// Accepts "feynman" / "pauli"; throws UsageError otherwise.
Prescription parse_prescription(std::string_view text);

/// <j|x|k> = int x (u_j^* u_k + v_j^* v_k) dx. Both modes must come from
/// the same unperturbed (lambda = 0) configuration; UsageError otherwise.
cplx x_matrix_element(const Mode &j, const Mode &k);

/// Unperturbed levels -cutoff..cutoff with their couplings <level|x|k> to
/// one reference level. Massless bags use the closed-form modes; massive
/// ones the shooting spectrum.
struct CouplingTable {
  BagConfig cfg; // unperturbed
  int level;
  int cutoff;
  double energy;  // eps_level
  cplx diagonal;  // <level|x|level>
  std::vector<double> energy_up;   // eps_{level+k}, k = 1..cutoff
  std::vector<double> energy_down; // eps_{level-k}
  std::vector<cplx> x_up;          // <level|x|level+k>
  std::vector<cplx> x_down;        // <level|x|level-k>
  std::string_view source;         // "closed-form" or "shooting"
};

/// Throws DomainError if cutoff < 1 or (massive) the spectrum does not
/// contain every level in range.
CouplingTable coupling_table(const BagConfig &cfg, int level, int cutoff);

struct PartialSum {
  int cutoff;
  double value;
};

struct SecondOrderResult {
  Prescription prescription;
  CutoffScheme scheme;
  double value;                     // lambda^2-scaled sum at the full cutoff
  std::vector<PartialSum> partial_sums; // one per cutoff step 1..cutoff
  double cauchy_residual;           // |S_N - S_{N/2}|
  double tolerance;
  bool converged;
};

/// Perturbative shifts of one level plus, when available, the exact shift.
struct ShiftReport {
  BagConfig cfg;
  int level;
  int cutoff;
  double w_first;
  std::vector<SecondOrderResult> second;
  std::optional<double> w_exact;

  struct Verdict {
    Prescription prescription;
    double deviation; // |w_first + w_second - w_exact|
    std::optional<bool> agrees; // withheld when the sum is unconverged
  };
  std::vector<Verdict> verdicts;
  double agreement_tol = 0.0;

  const SecondOrderResult *find(Prescription p) const;
  const Verdict *verdict(Prescription p) const;
};

/// Default Cauchy tolerance 1e-9 lambda^2 a^3.
double default_tolerance(const BagConfig &cfg);

/// lambda <level|x|level>.
double first_order(const BagConfig &cfg, int level);

/// Second-order Rayleigh-Schroedinger sum over a precomputed table:
///   W = lambda^2 sum_k |<0|x|k>|^2 / (eps_0 - eps_k)
/// accumulated pairwise (k with -k first, then pairs by ascending |k|).
SecondOrderResult second_order(const CouplingTable &table, double lambda,
                               Prescription prescription,
                               CutoffScheme scheme, double tol);

/// Ground-state (level 0) second-order report for one prescription.
/// Throws DomainError if level != 0 or cutoff < 4. tol <= 0 selects the
/// default tolerance.
ShiftReport second_order(const BagConfig &cfg, int level,
                         Prescription prescription, int cutoff, double tol = 0.0);

/// Both prescriptions side by side with the exact shift from shooting.
/// A prescription agrees when |w_first + w_second - w_exact| < agreement_tol.
ShiftReport compare(const BagConfig &cfg, int level, int cutoff,
                    double tol = 0.0, double agreement_tol = 1e-8);

/// Richardson extrapolation of the Pauli-respecting sum from three cutoffs
/// N, 2N, 4N; the tail order is estimated from the data.
struct Extrapolation {
  double limit;
  double order;
  std::vector<PartialSum> samples;
};
Extrapolation extrapolate_pauli(const BagConfig &cfg, int base_cutoff);

} // namespace diracbag
