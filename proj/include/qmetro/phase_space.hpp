#pragma once

#include "qmetro/fock.hpp"
#include "qmetro/quadrature.hpp"
#include "qmetro/states.hpp"

#include <string>
#include <vector>

namespace qmetro {

struct PhasePoint {
  Complex alpha{0, 0};  // mode a
  Complex beta{0, 0};   // mode b
};

/// alpha~ = alpha cos(phi/2) + beta sin(phi/2), beta~ = -alpha sin(phi/2) + beta cos(phi/2)
PhasePoint rotate_coordinates(const PhasePoint& p, double phi);

/// L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

double wigner_pure(const PureStateSpec& spec, Complex alpha);
double wigner_squeezed_thermal(const SqueezedThermalSpec& spec, Complex beta);
double wigner_input(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                    const PhasePoint& p);
/// W_out(alpha, beta) = W_in(alpha~, beta~)
double output_wigner(const PureStateSpec& pure, const SqueezedThermalSpec& thermal, double phi,
                     const PhasePoint& p);

/// (2/pi) Tr[rho D(alpha) Pi D(alpha)^dagger] for a single mode.
double wigner_from_density(const ComplexMatrix& rho, Complex alpha);

/// Top-left dim x dim block of D(alpha) (-1)^n D(alpha)^dagger, with D built in
/// a padded space large enough that the block is exact to rounding.
ComplexMatrix displaced_parity(Index dim, Complex alpha);

/// Wigner function of the evolved two-mode state U(phi) rho_in U(phi)^dagger,
/// computed from displaced-parity traces on the exactly rotated ensemble.
class OutputWignerOracle {
 public:
  OutputWignerOracle(const PureStateSpec& pure, const SqueezedThermalSpec& thermal, double phi,
                     const TruncationPolicy& policy = {});

  /// Precomputes displaced parities and the mode-a contraction for a list of
  /// points used for both modes; value_on_grid(i, j) then gives W(points[i], points[j]).
  void prepare(const std::vector<Complex>& points);
  double value_on_grid(Index alpha_index, Index beta_index) const;
  double value(Complex alpha, Complex beta) const;
  Index dim() const { return dim_; }

 private:
  ComplexMatrix reduce_alpha(const ComplexMatrix& parity_a) const;
  static double contract(const ComplexMatrix& z, const ComplexMatrix& parity_b);

  Index dim_ = 0;
  RVector<double> weights_;
  std::vector<ComplexMatrix> outputs_;
  std::vector<ComplexMatrix> parities_;
  std::vector<ComplexMatrix> reduced_;
};

struct GaussCoefficients {
  double A = 0, B = 0, Xi = 0, C = 0, A1 = 0, B1 = 0, A2 = 0, B2 = 0;
};

/// A, B, Xi depend on (phi, r, nth); C on alpha0; A1, B1 on the squeezing of
/// mode a (R or R'); A2, B2 on R'.
GaussCoefficients gauss_coefficients(double phi, const SqueezedThermalSpec& thermal,
                                     double alpha0 = 0, double squeeze = 0);

enum class ParityRoute { Closed, Quadrature, Trace };
const char* route_name(ParityRoute route) noexcept;

/// Closed forms exist for Fock N <= 2, cats, the squeezed vacuum and SPSSV.
bool has_parity_closed_form(const PureStateSpec& pure);
double parity_closed(const PureStateSpec& pure, double phi, const SqueezedThermalSpec& thermal);

/// (pi/2) times the integral of W_out(0, beta) over the beta plane.
QuadratureResult parity_quadrature(const PureStateSpec& pure, double phi,
                                   const SqueezedThermalSpec& thermal,
                                   const QuadratureConfig& config = {});

/// <(-1)^{a^dagger a} (x) I> on the evolved state, from the exact photon-number
/// sector decomposition. The signal is stored as a finite Fourier series in phi,
/// so values and derivatives at any phase are cheap after construction.
class ParityTraceSignal {
 public:
  ParityTraceSignal(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                    const TruncationPolicy& policy = {});

  double value(double phi) const;
  double derivative(double phi) const;

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index max_photons() const { return n_max_; }
  double tail_population() const { return tail_population_; }

 private:
  Index dim_a_ = 0, dim_b_ = 0, n_max_ = 0;
  double tail_population_ = 0;
  // coefficient of exp(-i w phi) at index w + n_max
  std::vector<Complex> coefficients_;
};

double parity_trace(const PureStateSpec& pure, const SqueezedThermalSpec& thermal, double phi,
                    const TruncationPolicy& policy = {});

struct ParitySignal {
  std::vector<double> phi;
  std::vector<double> values;
  ParityRoute route = ParityRoute::Trace;
  std::string label;

  /// Grid strictly increasing in (0, pi], |value| <= 1 + 1e-9.
  void validate() const;
};

ParitySignal sample_parity(ParityRoute route, const PureStateSpec& pure,
                           const SqueezedThermalSpec& thermal, const std::vector<double>& phi,
                           const TruncationPolicy& policy = {});

}  // namespace qmetro
