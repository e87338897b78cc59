#include "qmetro/qfi.hpp"

#include <cmath>

namespace qmetro {

namespace {

double tfac(const SqueezedThermalSpec& t) { return 2 * t.nth + 1; }

// Factored action of J_y on u (x) w.
struct FactoredKet {
  ComplexVector u, w;        // the product itself
  ComplexVector au, adu;     // a u, a^dagger u (grown by one level)
  ComplexVector bw, bdw;     // b w, b^dagger w (grown by one level)
};

FactoredKet factor(const ComplexVector& u, const ComplexVector& w) {
  FactoredKet f;
  f.u = u;
  f.w = w;
  f.au = resized(lower(u), u.size() + 1);
  f.adu = raise(u);
  f.bw = resized(lower(w), w.size() + 1);
  f.bdw = raise(w);
  return f;
}

// || J_y (u (x) w) ||^2
double jy_norm2(const FactoredKet& f) {
  const double cross = std::real(f.adu.dot(f.au) * f.bw.dot(f.bdw));
  return 0.25 * (f.adu.squaredNorm() * f.bw.squaredNorm() +
                 f.au.squaredNorm() * f.bdw.squaredNorm() - 2 * cross);
}

}  // namespace

double QfiBreakdown::identity_residual() const {
  return std::abs(F - (na + nb + 2 * na * nb + theta));
}

bool QfiBreakdown::sql_criterion_consistent() const {
  return (F > nT) == (theta > -2 * na * nb);
}

double theta_term(const StateMoments& m, const SqueezedThermalSpec& t) {
  t.validate();
  const double T = tfac(t);
  const double first = std::sinh(2 * t.r) * T * m.mean_a2.real();
  const double amp2 = std::norm(m.mean_a);
  if (amp2 == 0 || t.nth == 0) return first;
  const double weight = 4 * t.nth * (t.nth + 1) / T;
  return first - weight * (std::cosh(2 * t.r) + std::cos(2 * m.phase) * std::sinh(2 * t.r)) * amp2;
}

QfiBreakdown qfi_from_moments(const StateMoments& m, const SqueezedThermalSpec& t) {
  QfiBreakdown q;
  q.na = m.mean_n;
  q.nb = t.mean_photons();
  q.theta = theta_term(m, t);
  q.F = q.na + q.nb + 2 * q.na * q.nb + q.theta;
  q.nT = q.na + q.nb;
  q.F_sql = q.nT;
  q.F_hl = q.nT * q.nT;
  return q;
}

QfiBreakdown qfi_closed(const PureStateSpec& pure, const SqueezedThermalSpec& thermal) {
  return qfi_from_moments(moments_closed(pure), thermal);
}

double qfi_even_odd_unsqueezed(double na, double nth) { return na + nth + 2 * na * nth; }

double qfi_coherent(double alpha0, const SqueezedThermalSpec& t) {
  return std::exp(2 * t.r) * alpha0 * alpha0 / tfac(t) + t.mean_photons();
}

double qfi_fock(int photons, double nb) { return photons + nb + 2.0 * photons * nb; }

double qfi_cat(const PureStateSpec& cat, const SqueezedThermalSpec& t) {
  if (cat.family != Family::EvenCat && cat.family != Family::OddCat) {
    fail(ErrorKind::InvalidInput, "qfi_cat: not a cat state");
  }
  const double a2 = cat.amplitude * cat.amplitude;
  const double na = moments_closed(cat).mean_n;
  return tfac(t) * (a2 * std::sinh(2 * t.r) + na * std::cosh(2 * t.r)) + t.mean_photons();
}

double qfi_squeezed_vacuum(double R, const SqueezedThermalSpec& t) {
  return 0.5 * tfac(t) * std::cosh(2 * (R + t.r)) - 0.5;
}

double qfi_spssv(double r_prime, const SqueezedThermalSpec& t) {
  return 1.5 * tfac(t) * std::cosh(2 * (r_prime + t.r)) - 0.5;
}

double qfi_family_formula(const PureStateSpec& p, const SqueezedThermalSpec& t) {
  p.validate();
  t.validate();
  switch (p.family) {
    case Family::Fock: return qfi_fock(p.photons, t.mean_photons());
    case Family::Coherent: return qfi_coherent(p.amplitude, t);
    case Family::EvenCat:
    case Family::OddCat: return qfi_cat(p, t);
    case Family::SqueezedVacuum: return qfi_squeezed_vacuum(p.amplitude, t);
    case Family::Spssv: return qfi_spssv(p.amplitude, t);
  }
  fail(ErrorKind::InvalidInput, "qfi_family_formula: unknown family");
}

double qfi_large_na_approx(double na, const SqueezedThermalSpec& t) {
  return std::exp(2 * t.r) * tfac(t) * na + t.mean_photons();
}

Benchmarks benchmarks(double nT) {
  if (!(nT > 0)) fail(ErrorKind::InvalidInput, "benchmarks: total photon number must be positive");
  return {nT, nT * nT, 1 / std::sqrt(nT), 1 / nT};
}

ThresholdReport thresholds(const SqueezedThermalSpec& t) {
  t.validate();
  ThresholdReport rep;
  rep.sql_crossing_nth = (std::exp(2 * t.r) - 1) / 2;
  rep.theta_positive_nth = (std::sqrt(1 + std::tanh(2 * t.r)) - 1) / 2;
  return rep;
}

double cat_hl_residual(double na, const SqueezedThermalSpec& t) {
  const double nb = t.mean_photons();
  return na * tfac(t) * std::sinh(2 * t.r) - (na * na + nb * nb - na - nb);
}

double qfi_pure(const ComplexVector& ket_a, const ComplexVector& ket_b) {
  if (ket_a.size() < 1 || ket_b.size() < 1) fail(ErrorKind::InvalidDimension, "qfi_pure: empty ket");
  const FactoredKet f = factor(ket_a, ket_b);
  const Complex i(0, 1);
  const Complex mean_adag = f.u.dot(resized(f.adu, f.u.size()));
  const Complex mean_a = f.u.dot(resized(f.au, f.u.size()));
  const Complex mean_b = f.w.dot(resized(f.bw, f.w.size()));
  const Complex mean_bdag = f.w.dot(resized(f.bdw, f.w.size()));
  const double jy = std::real(-0.5 * i * (mean_adag * mean_b - mean_a * mean_bdag));
  const double norm = f.u.squaredNorm() * f.w.squaredNorm();
  return std::max(0.0, 4 * (jy_norm2(f) / norm - jy * jy / (norm * norm)));
}

double qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& generator) {
  if (rho.rows() != generator.rows() || rho.cols() != generator.cols()) {
    fail(ErrorKind::InvalidDimension, "qfi_mixed: dimension mismatch");
  }
  const Spectrum<double> s = eigh(rho);
  const ComplexMatrix g = s.eigenvectors.adjoint() * generator * s.eigenvectors;
  double F = 0;
  const Index n = s.eigenvalues.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double p = std::max(0.0, s.eigenvalues[i]), q = std::max(0.0, s.eigenvalues[j]);
      if (p + q < 1e-14) continue;
      F += 2 * (p - q) * (p - q) / (p + q) * std::norm(g(i, j));
    }
  }
  return F;
}

OracleResult qfi_spectral_oracle(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                                 const TruncationPolicy& policy) {
  const ComplexVector psi = pure_ket(pure, policy);
  const ThermalEnsemble ens =
      squeezed_thermal_ensemble(thermal, policy.tail_tolerance, policy.cutoff_b);
  OracleResult out;
  out.dim_a = psi.size();
  out.dim_b = ens.dim();
  if (out.dim_a * out.dim_b > policy.max_joint_dim) {
    fail(ErrorKind::ResourceLimit,
         pure.describe() + ": joint dimension " + std::to_string(out.dim_a * out.dim_b) +
             " exceeds limit " + std::to_string(policy.max_joint_dim));
  }
  out.thermal_terms = ens.weights.size();
  out.skipped_weight = ens.skipped_weight;
  out.tail_population = ens.tail_population;

  // Mode-a factors are shared by every eigenvector.
  const ComplexVector au = lower(psi);
  const ComplexVector adu = raise(psi);
  const Complex mean_a = psi.dot(au);
  const Complex mean_adag = std::conj(mean_a);
  const Complex a2 = resized(adu, psi.size() + 1).dot(resized(au, psi.size() + 1));
  const double na_up = adu.squaredNorm(), na_down = au.squaredNorm();

  const Index M = out.thermal_terms;
  const Index db = out.dim_b;
  const ComplexMatrix& phi = ens.columns;
  ComplexMatrix b_phi = ComplexMatrix::Zero(db + 1, M);
  ComplexMatrix bd_phi = ComplexMatrix::Zero(db + 1, M);
  for (Index n = 0; n < db; ++n) {
    if (n > 0) b_phi.row(n - 1) = std::sqrt(double(n)) * phi.row(n);
    bd_phi.row(n + 1) = std::sqrt(double(n + 1)) * phi.row(n);
  }

  double first = 0;
  for (Index m = 0; m < M; ++m) {
    const double norm_b = b_phi.col(m).squaredNorm(), norm_bd = bd_phi.col(m).squaredNorm();
    const double cross = std::real(a2 * b_phi.col(m).dot(bd_phi.col(m)));
    first += 4 * ens.weights[m] * 0.25 * (na_up * norm_b + na_down * norm_bd - 2 * cross);
  }

  // <phi_m| b |phi_m'> and <phi_m| b^dagger |phi_m'>
  const ComplexMatrix phi_pad = [&] {
    ComplexMatrix p = ComplexMatrix::Zero(db + 1, M);
    p.topRows(db) = phi;
    return p;
  }();
  const ComplexMatrix bmat = phi_pad.adjoint() * b_phi;
  const ComplexMatrix bdmat = phi_pad.adjoint() * bd_phi;
  const Complex i(0, 1);
  double second = 0;
  for (Index m = 0; m < M; ++m) {
    for (Index k = 0; k < M; ++k) {
      const double q = ens.weights[m], qk = ens.weights[k];
      if (q + qk < 1e-14) continue;
      const Complex elem = -0.5 * i * (mean_adag * bmat(m, k) - mean_a * bdmat(m, k));
      second += 8 * q * qk / (q + qk) * std::norm(elem);
    }
  }
  out.F = first - second;
  return out;
}

}  // namespace qmetro
