#include "qmetro/phase_space.hpp"

#include "qmetro/interferometer.hpp"

#include <cmath>

namespace qmetro {

namespace {

constexpr double kTwoOverPi = 2 / M_PI;

Complex i_power(Index k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

double tfac(const SqueezedThermalSpec& t) { return 2 * t.nth + 1; }

// Gaussian envelope exp(-kx br^2 - ky bi^2) of W_out(0, beta).
std::pair<double, double> parity_envelope(const PureStateSpec& pure, double phi,
                                          const SqueezedThermalSpec& thermal) {
  switch (pure.family) {
    case Family::SqueezedVacuum:
    case Family::Spssv: {
      const GaussCoefficients g = gauss_coefficients(phi, thermal, 0, pure.amplitude);
      return {g.A1, g.B1};
    }
    default: {
      const GaussCoefficients g = gauss_coefficients(phi, thermal);
      return {g.A, g.B};
    }
  }
}

void check_density(const ComplexMatrix& rho, const char* what) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    fail(ErrorKind::InvalidDimension, std::string(what) + ": density matrix must be square");
  }
}

}  // namespace

PhasePoint rotate_coordinates(const PhasePoint& p, double phi) {
  const double c = std::cos(phi / 2), s = std::sin(phi / 2);
  return {p.alpha * c + p.beta * s, -p.alpha * s + p.beta * c};
}

double laguerre(int n, double x) {
  if (n < 0) fail(ErrorKind::InvalidInput, "laguerre: negative order");
  double prev = 1, cur = 1 - x;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 - x) * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double wigner_pure(const PureStateSpec& spec, Complex alpha) {
  spec.validate();
  const double ar = alpha.real(), ai = alpha.imag();
  const double mod2 = std::norm(alpha);
  const double x = spec.amplitude;
  switch (spec.family) {
    case Family::Fock: {
      const double sign = spec.photons % 2 == 0 ? 1 : -1;
      return kTwoOverPi * sign * std::exp(-2 * mod2) * laguerre(spec.photons, 4 * mod2);
    }
    case Family::Coherent:
      return kTwoOverPi * std::exp(-2 * std::norm(alpha - x));
    case Family::EvenCat:
    case Family::OddCat: {
      const double pm = spec.family == Family::EvenCat ? 1 : -1;
      const double e = std::exp(-2 * x * x);
      // e^{-2|a|^2} [e^{-2x^2 + 4 ar x} + e^{-2x^2 - 4 ar x} +- 2 cos(4 ai x)], exponents merged
      const double bracket = std::exp(-2 * mod2 - 2 * x * x + 4 * ar * x) +
                             std::exp(-2 * mod2 - 2 * x * x - 4 * ar * x) +
                             pm * 2 * std::exp(-2 * mod2) * std::cos(4 * ai * x);
      return bracket / (M_PI * (1 + pm * e));
    }
    case Family::SqueezedVacuum:
      return kTwoOverPi * std::exp(-2 * (std::exp(-2 * x) * ar * ar + std::exp(2 * x) * ai * ai));
    case Family::Spssv: {
      const double q = std::exp(-2 * x) * ar * ar + std::exp(2 * x) * ai * ai;
      return kTwoOverPi * std::exp(-2 * q) * (4 * q - 1);
    }
  }
  fail(ErrorKind::InvalidInput, "wigner_pure: unknown family");
}

double wigner_squeezed_thermal(const SqueezedThermalSpec& t, Complex beta) {
  t.validate();
  const double T = tfac(t);
  const double br = beta.real(), bi = beta.imag();
  return kTwoOverPi / T *
         std::exp(-2 * (std::exp(2 * t.r) * br * br + std::exp(-2 * t.r) * bi * bi) / T);
}

double wigner_input(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                    const PhasePoint& p) {
  return wigner_pure(pure, p.alpha) * wigner_squeezed_thermal(thermal, p.beta);
}

double output_wigner(const PureStateSpec& pure, const SqueezedThermalSpec& thermal, double phi,
                     const PhasePoint& p) {
  return wigner_input(pure, thermal, rotate_coordinates(p, phi));
}

ComplexMatrix displaced_parity(Index dim, Complex alpha) {
  detail::require_dim(dim, 1, "displaced_parity");
  const double a = std::abs(alpha);
  const Index padded =
      dim + static_cast<Index>(std::ceil(8 * a * std::sqrt(double(dim + 1)) + 4 * a * a + 40));
  if (padded > kMaxDenseDim / 2) {
    fail(ErrorKind::TruncationOverflow,
         "displaced_parity: |alpha| = " + std::to_string(a) + " too large for dim " +
             std::to_string(dim));
  }
  const ComplexMatrix d = displacement_matrix<double>(padded, alpha);
  ComplexMatrix rows = d.topRows(dim);
  ComplexMatrix signed_rows = rows;
  for (Index l = 1; l < padded; l += 2) signed_rows.col(l) *= -1.0;
  return signed_rows * rows.adjoint();
}

double wigner_from_density(const ComplexMatrix& rho, Complex alpha) {
  check_density(rho, "wigner_from_density");
  const ComplexMatrix p = displaced_parity(rho.rows(), alpha);
  return kTwoOverPi * std::real(rho.cwiseProduct(p.transpose()).sum());
}

OutputWignerOracle::OutputWignerOracle(const PureStateSpec& pure,
                                       const SqueezedThermalSpec& thermal, double phi,
                                       const TruncationPolicy& policy) {
  const ComplexVector psi = pure_ket(pure, policy);
  const ThermalEnsemble ens =
      squeezed_thermal_ensemble(thermal, policy.tail_tolerance, policy.cutoff_b);
  dim_ = psi.size() + ens.dim() - 1;
  if (dim_ * dim_ > policy.max_joint_dim) {
    fail(ErrorKind::ResourceLimit, "output Wigner oracle: joint dimension " +
                                       std::to_string(dim_ * dim_) + " exceeds limit " +
                                       std::to_string(policy.max_joint_dim));
  }
  weights_ = ens.weights;
  std::vector<ComplexMatrix> inputs;
  inputs.reserve(ens.weights.size());
  for (Index m = 0; m < ens.weights.size(); ++m) inputs.push_back(psi * ens.columns.col(m).transpose());
  outputs_ = rotate_two_mode(inputs, phi);
}

ComplexMatrix OutputWignerOracle::reduce_alpha(const ComplexMatrix& parity_a) const {
  ComplexMatrix z = ComplexMatrix::Zero(dim_, dim_);
  for (size_t m = 0; m < outputs_.size(); ++m) {
    z.noalias() += weights_[m] * (outputs_[m].adjoint() * (parity_a * outputs_[m]));
  }
  return z;
}

double OutputWignerOracle::contract(const ComplexMatrix& z, const ComplexMatrix& parity_b) {
  return 4 / (M_PI * M_PI) * std::real(z.cwiseProduct(parity_b).sum());
}

void OutputWignerOracle::prepare(const std::vector<Complex>& points) {
  parities_.clear();
  reduced_.clear();
  for (Complex p : points) {
    parities_.push_back(displaced_parity(dim_, p));
    reduced_.push_back(reduce_alpha(parities_.back()));
  }
}

double OutputWignerOracle::value_on_grid(Index alpha_index, Index beta_index) const {
  return contract(reduced_.at(alpha_index), parities_.at(beta_index));
}

double OutputWignerOracle::value(Complex alpha, Complex beta) const {
  return contract(reduce_alpha(displaced_parity(dim_, alpha)), displaced_parity(dim_, beta));
}

GaussCoefficients gauss_coefficients(double phi, const SqueezedThermalSpec& t, double alpha0,
                                     double squeeze) {
  t.validate();
  const double T = tfac(t);
  const double c2 = std::pow(std::cos(phi / 2), 2), s = std::sin(phi / 2);
  const double s2 = s * s;
  GaussCoefficients g;
  g.A = 2 * (std::exp(2 * t.r) * c2 / T + s2);
  g.B = 2 * (std::exp(-2 * t.r) * c2 / T + s2);
  const double ab = g.A * g.B;
  g.Xi = ab * (ab - 2 * (g.A + g.B) * (1 - std::cos(phi))) +
         2 * s2 * s2 * (3 * g.A * g.A + 2 * ab + 3 * g.B * g.B);
  g.C = 4 * alpha0 * s;
  g.A1 = 2 * std::exp(2 * t.r) * c2 / T + 2 * std::exp(-2 * squeeze) * s2;
  g.B1 = 2 * std::exp(-2 * t.r) * c2 / T + 2 * std::exp(2 * squeeze) * s2;
  g.A2 = 4 * std::exp(-2 * squeeze) * s2;
  g.B2 = 4 * std::exp(2 * squeeze) * s2;
  return g;
}

const char* route_name(ParityRoute route) noexcept {
  switch (route) {
    case ParityRoute::Closed: return "closed";
    case ParityRoute::Quadrature: return "quadrature";
    case ParityRoute::Trace: return "trace";
  }
  return "unknown";
}

bool has_parity_closed_form(const PureStateSpec& pure) {
  switch (pure.family) {
    case Family::Fock: return pure.photons <= 2;
    case Family::Coherent: return false;
    default: return true;
  }
}

double parity_closed(const PureStateSpec& pure, double phi, const SqueezedThermalSpec& thermal) {
  pure.validate();
  if (!has_parity_closed_form(pure)) {
    fail(ErrorKind::UnsupportedClosedForm,
         "no closed-form parity signal for " + pure.describe() + "; use the trace or quadrature route");
  }
  const double T = tfac(thermal);
  const double x = pure.amplitude;
  switch (pure.family) {
    case Family::Fock: {
      const GaussCoefficients g = gauss_coefficients(phi, thermal);
      const double ab = g.A * g.B;
      if (pure.photons == 0) return 2 / (T * std::sqrt(ab));
      if (pure.photons == 1) {
        return 2 * ((g.A + g.B) * (1 - std::cos(phi)) - ab) / (T * std::pow(ab, 1.5));
      }
      return 2 * g.Xi / (T * std::pow(ab, 2.5));
    }
    case Family::EvenCat:
    case Family::OddCat: {
      const double pm = pure.family == Family::EvenCat ? 1 : -1;
      const GaussCoefficients g = gauss_coefficients(phi, thermal, x);
      const double c2 = g.C * g.C;
      const double num = std::exp(-2 * x * x + c2 / (4 * g.A)) + pm * std::exp(-c2 / (4 * g.B));
      return 2 * num / (T * (1 + pm * std::exp(-2 * x * x)) * std::sqrt(g.A * g.B));
    }
    case Family::SqueezedVacuum: {
      const GaussCoefficients g = gauss_coefficients(phi, thermal, 0, x);
      return 2 / (T * std::sqrt(g.A1 * g.B1));
    }
    case Family::Spssv: {
      const GaussCoefficients g = gauss_coefficients(phi, thermal, 0, x);
      return 2 / (T * std::sqrt(g.A1 * g.B1)) * (g.A2 / (2 * g.A1) + g.B2 / (2 * g.B1) - 1);
    }
    case Family::Coherent:
      break;
  }
  fail(ErrorKind::UnsupportedClosedForm, "no closed-form parity signal");
}

QuadratureResult parity_quadrature(const PureStateSpec& pure, double phi,
                                   const SqueezedThermalSpec& thermal,
                                   const QuadratureConfig& config) {
  pure.validate();
  thermal.validate();
  const double c = std::cos(phi / 2), s = std::sin(phi / 2);
  const auto [kx, ky] = parity_envelope(pure, phi, thermal);
  auto integrand = [&](double br, double bi) {
    const Complex beta(br, bi);
    return M_PI / 2 * wigner_pure(pure, s * beta) * wigner_squeezed_thermal(thermal, c * beta);
  };
  return integrate_plane(integrand, kx, ky, config);
}

ParityTraceSignal::ParityTraceSignal(const PureStateSpec& pure,
                                     const SqueezedThermalSpec& thermal,
                                     const TruncationPolicy& policy) {
  const ComplexVector psi = pure_ket(pure, policy);
  const ThermalEnsemble ens =
      squeezed_thermal_ensemble(thermal, policy.tail_tolerance, policy.cutoff_b);
  dim_a_ = psi.size();
  dim_b_ = ens.dim();
  if (dim_a_ * dim_b_ > policy.max_joint_dim) {
    fail(ErrorKind::ResourceLimit, pure.describe() + ": joint dimension " +
                                       std::to_string(dim_a_ * dim_b_) + " exceeds limit " +
                                       std::to_string(policy.max_joint_dim));
  }
  tail_population_ = ens.tail_population;
  n_max_ = dim_a_ + dim_b_ - 2;
  coefficients_.assign(2 * n_max_ + 1, Complex(0));
  const Index M = ens.weights.size();

  for (Index n = 0; n <= n_max_; ++n) {
    const Index klo = std::max<Index>(0, n - dim_b_ + 1);
    const Index khi = std::min<Index>(n, dim_a_ - 1);
    const Index len = khi - klo + 1;
    // D^dagger applied to the sector components of psi (x) phi_m
    ComplexMatrix x(len, M);
    for (Index k = klo; k <= khi; ++k) {
      x.row(k - klo) = (i_power(k) * psi[k]) * ens.columns.row(n - k);
    }
    if (x.cwiseAbs2().sum() == 0) continue;
    const SectorSpectrum sector = sector_spectrum(static_cast<int>(n));
    const RMatrix<double> vt = sector.vectors.middleRows(klo, len).transpose();
    ComplexMatrix c(n + 1, M);
    c.real() = vt * x.real();
    c.imag() = vt * x.imag();
    for (Index j = 0; j <= n; ++j) {
      Complex g(0);
      for (Index m = 0; m < M; ++m) g += ens.weights[m] * std::conj(c(n - j, m)) * c(j, m);
      coefficients_[2 * j - n + n_max_] += double(sector.partner_sign[j]) * g;
    }
  }
}

double ParityTraceSignal::value(double phi) const {
  double total = 0;
  for (Index w = -n_max_; w <= n_max_; ++w) {
    const Complex g = coefficients_[w + n_max_];
    if (g == Complex(0)) continue;
    total += std::real(g * std::polar(1.0, -double(w) * phi));
  }
  return total;
}

double ParityTraceSignal::derivative(double phi) const {
  double total = 0;
  for (Index w = -n_max_; w <= n_max_; ++w) {
    const Complex g = coefficients_[w + n_max_];
    if (g == Complex(0) || w == 0) continue;
    total += std::real(Complex(0, -double(w)) * g * std::polar(1.0, -double(w) * phi));
  }
  return total;
}

double parity_trace(const PureStateSpec& pure, const SqueezedThermalSpec& thermal, double phi,
                    const TruncationPolicy& policy) {
  return ParityTraceSignal(pure, thermal, policy).value(phi);
}

void ParitySignal::validate() const {
  if (phi.size() != values.size()) fail(ErrorKind::InvalidInput, "parity signal: size mismatch");
  for (size_t k = 0; k < phi.size(); ++k) {
    if (!(phi[k] > 0) || phi[k] > M_PI) {
      fail(ErrorKind::InvalidInput, "parity signal: phases must lie in (0, pi]");
    }
    if (k > 0 && !(phi[k] > phi[k - 1])) {
      fail(ErrorKind::InvalidInput, "parity signal: phase grid must be strictly increasing");
    }
    if (!(std::abs(values[k]) <= 1 + 1e-9)) {
      fail(ErrorKind::InvalidInput, "parity signal: |<Pi>| exceeds 1");
    }
  }
}

ParitySignal sample_parity(ParityRoute route, const PureStateSpec& pure,
                           const SqueezedThermalSpec& thermal, const std::vector<double>& phi,
                           const TruncationPolicy& policy) {
  ParitySignal out;
  out.route = route;
  out.phi = phi;
  out.label = pure.describe() + " r=" + std::to_string(thermal.r) + " nth=" + std::to_string(thermal.nth);
  out.values.reserve(phi.size());
  switch (route) {
    case ParityRoute::Closed:
      for (double p : phi) out.values.push_back(parity_closed(pure, p, thermal));
      break;
    case ParityRoute::Quadrature:
      for (double p : phi) out.values.push_back(parity_quadrature(pure, p, thermal).value);
      break;
    case ParityRoute::Trace: {
      const ParityTraceSignal signal(pure, thermal, policy);
      for (double p : phi) out.values.push_back(signal.value(p));
      break;
    }
  }
  out.validate();
  return out;
}

}  // namespace qmetro
