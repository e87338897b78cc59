#include "qmetro/sensitivity.hpp"

#include "qmetro/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmetro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Three-point first derivative at x[mid] using samples at x[i0] < x[i1] < x[i2].
double three_point(const std::vector<double>& x, const std::vector<double>& f, size_t i0,
                   size_t i1, size_t i2, size_t at) {
  const double h1 = x[i1] - x[i0], h2 = x[i2] - x[i1];
  if (at == i1) {
    return -h2 / (h1 * (h1 + h2)) * f[i0] + (h2 - h1) / (h1 * h2) * f[i1] +
           h1 / (h2 * (h1 + h2)) * f[i2];
  }
  if (at == i0) {
    return -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[i0] + (h1 + h2) / (h1 * h2) * f[i1] -
           h1 / (h2 * (h1 + h2)) * f[i2];
  }
  return h2 / (h1 * (h1 + h2)) * f[i0] - (h1 + h2) / (h1 * h2) * f[i1] +
         (2 * h2 + h1) / (h2 * (h1 + h2)) * f[i2];
}

double dphi_from(double value, double slope) {
  if (std::abs(slope) < 1e-14) return kInf;
  const double spread = std::max(0.0, (1 - value) * (1 + value));
  return std::sqrt(spread) / std::abs(slope);
}

}  // namespace

double crb(double F) {
  if (!(F > 0)) fail(ErrorKind::InvalidInput, "crb: Fisher information must be positive");
  return 1 / std::sqrt(F);
}

SensitivityCurve error_propagation(const ParitySignal& signal, double resolution_tolerance) {
  signal.validate();
  const size_t n = signal.phi.size();
  if (n < 5) fail(ErrorKind::InvalidInput, "error_propagation: need at least 5 grid points");
  const std::vector<double>& x = signal.phi;
  const std::vector<double>& f = signal.values;
  std::vector<double> slope(n);
  slope[0] = three_point(x, f, 0, 1, 2, 0);
  slope[n - 1] = three_point(x, f, n - 3, n - 2, n - 1, n - 1);
  for (size_t i = 1; i + 1 < n; ++i) slope[i] = three_point(x, f, i - 1, i, i + 1, i);

  double scale = 0;
  for (double s : slope) scale = std::max(scale, std::abs(s));
  double worst = 0, worst_phi = 0;
  for (size_t i = 2; i + 2 < n; ++i) {
    if (std::abs(slope[i]) < 1e-14 || std::abs(slope[i]) < 1e-6 * scale) continue;
    const double wide = three_point(x, f, i - 2, i, i + 2, i);
    // The wide stencil carries roughly four times the error of the narrow one.
    const double estimate = std::abs(wide - slope[i]) / 3 / std::abs(slope[i]);
    if (estimate > worst) {
      worst = estimate;
      worst_phi = x[i];
    }
  }
  if (worst > resolution_tolerance) {
    std::ostringstream os;
    os << "phase grid too coarse: estimated relative slope error " << worst << " at phi = "
       << worst_phi << " (tolerance " << resolution_tolerance << ")";
    fail(ErrorKind::ResolutionError, os.str());
  }

  SensitivityCurve curve;
  curve.phi = x;
  curve.label = signal.label;
  curve.dphi.resize(n);
  for (size_t i = 0; i < n; ++i) curve.dphi[i] = dphi_from(f[i], slope[i]);
  return curve;
}

UncertaintyMinimum min_uncertainty(const SensitivityCurve& curve,
                                   const std::function<double(double)>& dphi_at) {
  const size_t n = curve.phi.size();
  if (n == 0 || curve.dphi.size() != n) fail(ErrorKind::InvalidInput, "min_uncertainty: empty curve");
  size_t best = 0;
  for (size_t i = 1; i < n; ++i) {
    if (curve.dphi[i] < curve.dphi[best]) best = i;
  }
  UncertaintyMinimum out{curve.phi[best], curve.dphi[best]};
  if (!dphi_at || best == 0 || best + 1 == n || !std::isfinite(out.dphi)) return out;

  const double g = (std::sqrt(5.0) - 1) / 2;
  double lo = curve.phi[best - 1], hi = curve.phi[best + 1];
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = dphi_at(x1), f2 = dphi_at(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = dphi_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = dphi_at(x2);
    }
  }
  const double xm = f1 <= f2 ? x1 : x2;
  const double fm = std::min(f1, f2);
  if (fm < out.dphi) out = {xm, fm};
  return out;
}

std::vector<double> log_phase_grid(Index count, double lo, double hi) {
  if (count < 2 || !(lo > 0) || !(hi > lo)) fail(ErrorKind::InvalidInput, "log_phase_grid: bad range");
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / double(count - 1);
  for (Index k = 0; k < count; ++k) grid[k] = lo * std::exp(step * double(k));
  grid.back() = hi;
  return grid;
}

double local_dphi(const std::function<double(double)>& value, double phi,
                  const std::function<double(double)>& derivative) {
  const double v = value(phi);
  double slope;
  if (derivative) {
    slope = derivative(phi);
  } else {
    const double h = 1e-2 * std::abs(phi);
    auto central = [&](double step) { return (value(phi + step) - value(phi - step)) / (2 * step); };
    slope = (4 * central(h / 2) - central(h)) / 3;
  }
  return dphi_from(v, slope);
}

SensitivityCurve sensitivity_curve(const ParityTraceSignal& signal, const std::vector<double>& phi) {
  SensitivityCurve curve;
  curve.phi = phi;
  curve.dphi.reserve(phi.size());
  for (double p : phi) curve.dphi.push_back(dphi_from(signal.value(p), signal.derivative(p)));
  return curve;
}

CrbReport attainment_from_signal(const ParityTraceSignal& signal, double F, double phi_small) {
  if (!(phi_small > 0)) fail(ErrorKind::InvalidInput, "attainment: phi_small must be positive");
  CrbReport rep;
  rep.F = F;
  rep.phi_small = phi_small;
  rep.dphi_parity_limit = dphi_from(signal.value(phi_small), signal.derivative(phi_small));
  rep.dphi_half = dphi_from(signal.value(phi_small / 2), signal.derivative(phi_small / 2));
  rep.extrapolated = (4 * rep.dphi_half - rep.dphi_parity_limit) / 3;
  if (F <= 1e-14) {
    rep.dphi_crb = kInf;
    rep.vacuous = std::isinf(rep.dphi_parity_limit);
    rep.attainment_ratio = rep.vacuous ? std::numeric_limits<double>::quiet_NaN() : kInf;
    return rep;
  }
  rep.dphi_crb = crb(F);
  rep.attainment_ratio = rep.dphi_parity_limit * std::sqrt(F);
  return rep;
}

CrbReport attainment_report(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                            const TruncationPolicy& policy, double phi_small) {
  const ParityTraceSignal signal(pure, thermal, policy);
  return attainment_from_signal(signal, qfi_closed(pure, thermal).F, phi_small);
}

}  // namespace qmetro
