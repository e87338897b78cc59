#pragma once

#include "qmetro/phase_space.hpp"
#include "qmetro/states.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace qmetro {

/// 1 / sqrt(F)
double crb(double F);

struct SensitivityCurve {
  std::vector<double> phi;
  std::vector<double> dphi;  // +inf where the slope vanishes
  std::string label;
};

/// Delta phi = sqrt(1 - <Pi>^2) / |d<Pi>/dphi| with three-point differences on
/// the (possibly non-uniform) grid, one-sided at the ends. Throws
/// resolution-error when comparing against a stencil of twice the width
/// suggests a relative slope error above `resolution_tolerance`.
SensitivityCurve error_propagation(const ParitySignal& signal, double resolution_tolerance = 1e-2);

struct UncertaintyMinimum {
  double phi = 0;
  double dphi = std::numeric_limits<double>::infinity();
};

/// Grid minimum (ties go to the smaller phase), then golden-section refinement
/// inside the neighbouring bracket when `dphi_at` is given. A minimum on the
/// grid boundary is returned as is.
UncertaintyMinimum min_uncertainty(const SensitivityCurve& curve,
                                   const std::function<double(double)>& dphi_at = {});

/// Log-spaced phases in [lo, hi].
std::vector<double> log_phase_grid(Index count = 60, double lo = 1e-4, double hi = M_PI / 2);

/// Pointwise Delta phi. With no derivative the slope is a symmetric difference
/// extrapolated from steps h and h/2, h = 1e-2 * phi.
double local_dphi(const std::function<double(double)>& value, double phi,
                  const std::function<double(double)>& derivative = {});

SensitivityCurve sensitivity_curve(const ParityTraceSignal& signal, const std::vector<double>& phi);

struct CrbReport {
  double F = 0;
  double dphi_crb = 0;
  double phi_small = 0;
  double dphi_parity_limit = 0;  // Delta phi at phi_small
  double dphi_half = 0;          // Delta phi at phi_small / 2
  double extrapolated = 0;       // Richardson limit from the two
  double attainment_ratio = 0;   // dphi_parity_limit * sqrt(F)
  /// F = 0 and a constant signal: both uncertainties are infinite and the
  /// ratio is NaN.
  bool vacuous = false;
};

CrbReport attainment_from_signal(const ParityTraceSignal& signal, double F, double phi_small = 1e-3);
CrbReport attainment_report(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                            const TruncationPolicy& policy = {}, double phi_small = 1e-3);

}  // namespace qmetro
