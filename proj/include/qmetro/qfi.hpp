#pragma once

#include "qmetro/fock.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

struct QfiBreakdown {
  double na = 0;
  double nb = 0;
  double theta = 0;
  double F = 0;
  double nT = 0;
  double F_sql = 0;
  double F_hl = 0;

  /// |F - (na + nb + 2 na nb + theta)|, zero up to rounding by construction.
  double identity_residual() const;
  bool beats_sql() const { return F > nT; }
  /// F > nT must coincide with theta > -2 na nb.
  bool sql_criterion_consistent() const;
};

/// sinh(2r)(2nth+1) Re<a^2> - 4nth(nth+1)/(2nth+1) [cosh 2r + cos(2 phi0) sinh 2r] |<a>|^2
double theta_term(const StateMoments& moments, const SqueezedThermalSpec& thermal);

QfiBreakdown qfi_from_moments(const StateMoments& moments, const SqueezedThermalSpec& thermal);
QfiBreakdown qfi_closed(const PureStateSpec& pure, const SqueezedThermalSpec& thermal);

// Per-family reductions of the general expression.
double qfi_even_odd_unsqueezed(double na, double nth);
double qfi_coherent(double alpha0, const SqueezedThermalSpec& thermal);
double qfi_fock(int photons, double nb);
double qfi_cat(const PureStateSpec& cat, const SqueezedThermalSpec& thermal);
double qfi_squeezed_vacuum(double R, const SqueezedThermalSpec& thermal);
double qfi_spssv(double r_prime, const SqueezedThermalSpec& thermal);
/// Dispatches to the reduction matching the family.
double qfi_family_formula(const PureStateSpec& pure, const SqueezedThermalSpec& thermal);

/// e^{2r}(2nth+1) na + nb, the large-na form shared by cats and the squeezed vacuum.
double qfi_large_na_approx(double na, const SqueezedThermalSpec& thermal);

struct Benchmarks {
  double F_sql = 0;
  double F_hl = 0;
  double dphi_sql = 0;
  double dphi_hl = 0;
};

Benchmarks benchmarks(double nT);

struct ThresholdReport {
  double sql_crossing_nth = 0;    // coherent input beats the SQL iff nth is below this
  double theta_positive_nth = 0;  // coherent theta > 0 iff nth is below this
};

ThresholdReport thresholds(const SqueezedThermalSpec& thermal);
/// na (2nth+1) sinh 2r - (na^2 + nb^2 - na - nb); zero where a cat input reaches the HL.
double cat_hl_residual(double na, const SqueezedThermalSpec& thermal);

/// 4 Var(J_y) for the product |u>|w>.
double qfi_pure(const ComplexVector& ket_a, const ComplexVector& ket_b);

/// Brute-force QFI of a joint density matrix against a generator, from the full
/// eigendecomposition of rho. Meant for small dimensions.
double qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& generator);

struct OracleResult {
  double F = 0;
  Index dim_a = 0;
  Index dim_b = 0;
  Index thermal_terms = 0;
  double skipped_weight = 0;   // thermal weight dropped from the eigen-sum
  double tail_population = 0;  // Fock-truncation loss of mode b
  bool skipped_weight_reported() const { return skipped_weight > 1e-10; }
};

/// QFI of |psi><psi| (x) rho_b summed over the analytic eigensystem of the input
/// state. Only the components built on |psi> carry nonzero weight, so the sum
/// runs over the thermal ensemble with J_y applied in factored form.
OracleResult qfi_spectral_oracle(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                                 const TruncationPolicy& policy = {});

}  // namespace qmetro
