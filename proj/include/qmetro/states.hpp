#pragma once

#include "qmetro/fock.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qmetro {

/// Mode-a input families. Phase conventions are fixed: coherent and cat
/// amplitudes are real, the squeezed vacuum uses xi0 = -R and the
/// photon-subtracted state uses zeta = -R'.
enum class Family { Fock, Coherent, EvenCat, OddCat, SqueezedVacuum, Spssv };

const char* family_name(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name);
/// True for the families supported only on even or only on odd Fock levels.
bool is_even_odd(Family family) noexcept;

struct PureStateSpec {
  Family family = Family::Fock;
  int photons = 0;       // Fock N
  double amplitude = 0;  // alpha0 (coherent, cats), R (squeezed vacuum), R' (SPSSV)

  static PureStateSpec fock(int n);
  static PureStateSpec coherent(double alpha0);
  static PureStateSpec even_cat(double alpha0);
  static PureStateSpec odd_cat(double alpha0);
  static PureStateSpec squeezed_vacuum(double r);
  static PureStateSpec spssv(double r_prime);

  void validate() const;
  /// +1 for even support, -1 for odd support, 0 otherwise.
  int parity() const;
  std::string describe() const;
};

/// Picks the family parameter that gives mean photon number `mean_photons`:
/// Fock rounds, cats solve a^2 tanh/coth(a^2) = n by bisection, the squeezed
/// vacuum inverts sinh^2 R and SPSSV inverts 1 + 3 sinh^2 R'.
PureStateSpec spec_for_mean_photons(Family family, double mean_photons);

struct SqueezedThermalSpec {
  double r = 0;
  double nth = 0;

  void validate() const;
  /// (2 nth + 1) sinh^2 r + nth
  double mean_photons() const;
};

struct StateMoments {
  double mean_n = 0;
  Complex mean_a{0, 0};
  Complex mean_a2{0, 0};
  double phase = 0;  // arg <a>, 0 when <a> = 0
};

/// Population on Fock levels >= dim, bounded from the analytic photon-number
/// distribution of the family.
double tail_mass(const PureStateSpec& spec, Index dim);
/// Smallest dim with tail_mass(spec, dim) < tail_tolerance.
Index required_dim(const PureStateSpec& spec, double tail_tolerance);

ComplexVector pure_ket(const PureStateSpec& spec, Index dim, double tail_tolerance = 1e-12);
inline ComplexVector pure_ket(const PureStateSpec& spec, const TruncationPolicy& policy) {
  const Index dim = policy.cutoff_a > 0 ? policy.cutoff_a : required_dim(spec, policy.tail_tolerance);
  return pure_ket(spec, dim, policy.tail_tolerance);
}

/// Number of thermal levels kept so the discarded weight is below the tolerance.
Index thermal_levels(double nth, double tail_tolerance);

/// Spectral form of the squeezed thermal state: weights q_m and columns S|m>.
struct ThermalEnsemble {
  RVector<double> weights;  // renormalised to sum 1
  ComplexMatrix columns;    // dim x weights.size(), unit columns
  double skipped_weight = 0;
  double tail_population = 0;  // weighted population cut by the Fock truncation

  Index dim() const { return columns.rows(); }
  ComplexMatrix density() const;
};

/// Builds the ensemble with a Fock cutoff chosen so that the weighted population
/// above the cutoff is below `tail_tolerance`; `dim` > 0 forces the cutoff and
/// throws truncation-overflow if it is too small.
ThermalEnsemble squeezed_thermal_ensemble(const SqueezedThermalSpec& spec,
                                          double tail_tolerance = 1e-12, Index dim = 0);

ComplexMatrix squeezed_thermal_density(const SqueezedThermalSpec& spec, Index dim,
                                       double tail_tolerance = 1e-12);

StateMoments moments_closed(const PureStateSpec& spec);
StateMoments moments_numeric(const ComplexVector& ket);

}  // namespace qmetro
