#include "qmetro/interferometer.hpp"

#include <algorithm>
#include <cmath>

namespace qmetro {

namespace {

ComplexMatrix identity_like(Index n) { return ComplexMatrix::Identity(n, n); }

// i^k without rounding
Complex i_power(Index k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

void check_dims(ModeDims dims, Index max_dim) {
  detail::require_dim(dims.a, 2, "schwinger (mode a)");
  detail::require_dim(dims.b, 2, "schwinger (mode b)");
  if (dims.joint() > max_dim) {
    fail(ErrorKind::ResourceLimit, "joint dimension " + std::to_string(dims.joint()) +
                                       " exceeds limit " + std::to_string(max_dim));
  }
}

// Solves (T - mu) x = rhs for the symmetric tridiagonal T with zero diagonal and
// off-diagonal `off`, by LU with partial pivoting.
class ShiftedTridiagonal {
 public:
  ShiftedTridiagonal(const RVector<double>& off, double mu) {
    const Index n = off.size() + 1;
    dl_ = off;
    d_ = RVector<double>::Constant(n, -mu);
    du_ = off;
    du2_ = RVector<double>::Zero(std::max<Index>(n - 2, 0));
    swapped_.assign(n, false);
    for (Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        const double f = dl_[i] / nonzero(d_[i]);
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        swapped_[i] = true;
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
      }
    }
  }

  void solve(RVector<double>& x) const {
    const Index n = d_.size();
    for (Index i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) {
        const double tmp = x[i];
        x[i] = x[i + 1];
        x[i + 1] = tmp - dl_[i] * x[i];
      } else {
        x[i + 1] -= dl_[i] * x[i];
      }
    }
    x[n - 1] /= nonzero(d_[n - 1]);
    if (n > 1) x[n - 2] = (x[n - 2] - du_[n - 2] * x[n - 1]) / nonzero(d_[n - 2]);
    for (Index i = n - 3; i >= 0; --i) {
      x[i] = (x[i] - du_[i] * x[i + 1] - du2_[i] * x[i + 2]) / nonzero(d_[i]);
    }
  }

 private:
  static double nonzero(double v) { return v == 0 ? 1e-300 : v; }

  RVector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

}  // namespace

SchwingerOps schwinger(ModeDims dims, Index max_dim) {
  check_dims(dims, max_dim);
  const ComplexMatrix a = annihilation(dims.a);
  const ComplexMatrix b = annihilation(dims.b);
  const ComplexMatrix ia = identity_like(dims.a);
  const ComplexMatrix ib = identity_like(dims.b);
  const ComplexMatrix adag_b = tensor_product(a.adjoint(), b, max_dim);
  const ComplexMatrix a_bdag = tensor_product(a, b.adjoint(), max_dim);
  const Complex i(0, 1);
  SchwingerOps ops;
  ops.dims = dims;
  ops.jx = 0.5 * (adag_b + a_bdag);
  ops.jy = -0.5 * i * (adag_b - a_bdag);
  ops.jz = 0.5 * (tensor_product(number_operator(dims.a), ib, max_dim) -
                  tensor_product(ia, number_operator(dims.b), max_dim));
  return ops;
}

ComplexMatrix total_number(ModeDims dims) {
  ComplexMatrix n = ComplexMatrix::Zero(dims.joint(), dims.joint());
  for (Index i = 0; i < dims.a; ++i)
    for (Index j = 0; j < dims.b; ++j) n(i * dims.b + j, i * dims.b + j) = double(i + j);
  return n;
}

MziPropagator::MziPropagator(ModeDims dims, Index max_dim)
    : dims_(dims), ops_(schwinger(dims, max_dim)), spectrum_(eigh(ops_.jy)) {}

ComplexMatrix MziPropagator::unitary(double phi) const {
  return unitary_from_spectrum(spectrum_, phi);
}

ComplexMatrix MziPropagator::evolve(const ComplexMatrix& rho, double phi) const {
  if (rho.rows() != dims_.joint() || rho.cols() != dims_.joint()) {
    fail(ErrorKind::InvalidDimension, "evolve: density matrix does not match the joint space");
  }
  const ComplexMatrix u = unitary(phi);
  return u * rho * u.adjoint();
}

ComplexVector MziPropagator::evolve(const ComplexVector& psi, double phi) const {
  if (psi.size() != dims_.joint()) {
    fail(ErrorKind::InvalidDimension, "evolve: vector does not match the joint space");
  }
  return unitary(phi) * psi;
}

ComplexMatrix mzi_unitary(double phi, ModeDims dims, Index max_dim) {
  return MziPropagator(dims, max_dim).unitary(phi);
}

ComplexMatrix evolve(const ComplexMatrix& rho_in, double phi, ModeDims dims, Index max_dim) {
  return MziPropagator(dims, max_dim).evolve(rho_in, phi);
}

ComplexMatrix beam_splitter_composition(double phi, ModeDims dims, Index max_dim) {
  const SchwingerOps ops = schwinger(dims, max_dim);
  const Spectrum<double> sx = eigh(ops.jx);
  const ComplexMatrix bs_in = unitary_from_spectrum(sx, -M_PI / 2);
  const ComplexMatrix bs_out = unitary_from_spectrum(sx, M_PI / 2);
  ComplexVector phases(dims.joint());
  for (Index k = 0; k < dims.joint(); ++k) phases[k] = std::polar(1.0, phi * ops.jz(k, k).real());
  return bs_out * phases.asDiagonal() * bs_in;
}

Eigen::Matrix2d heisenberg_transform(double phi) {
  const double c = std::cos(phi / 2), s = std::sin(phi / 2);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

SectorSpectrum sector_spectrum(int photons) {
  if (photons < 0) fail(ErrorKind::InvalidInput, "sector_spectrum: negative photon number");
  const Index n = photons + 1;
  SectorSpectrum out;
  out.photons = photons;
  out.vectors.resize(n, n);
  out.partner_sign.assign(n, 1);
  if (n == 1) {
    out.vectors(0, 0) = 1;
    return out;
  }
  RVector<double> off(n - 1);
  for (Index k = 0; k + 1 < n; ++k) off[k] = 0.5 * std::sqrt(double(k + 1) * double(photons - k));
  RVector<double> start(n);
  for (Index k = 0; k < n; ++k) start[k] = 1.0 + 0.37 * std::sin(1.3 * double(k) + 0.2);
  const double nudge = 1e-10 * double(n);
  // Parity maps the eigenvector of j - n/2 onto that of n/2 - j, so only the
  // lower half is iterated and the upper half is defined as its parity image.
  for (Index j = 0; 2 * j <= photons; ++j) {
    const ShiftedTridiagonal lu(off, out.eigenvalue(j) + nudge);
    RVector<double> x = start;
    RVector<double> previous = RVector<double>::Zero(n);
    for (int it = 0; it < 10; ++it) {
      lu.solve(x);
      x /= x.norm();
      if (x.dot(previous) < 0) x = -x;
      const double change = (x - previous).cwiseAbs().maxCoeff();
      previous = x;
      if (it >= 1 && change < 1e-14) break;
    }
    out.vectors.col(j) = x;
    if (2 * j != photons) {
      for (Index k = 0; k < n; ++k) out.vectors(k, n - 1 - j) = (k % 2 == 0 ? 1.0 : -1.0) * x[k];
    } else {
      double s = 0;
      for (Index k = 0; k < n; ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * x[k] * x[k];
      out.partner_sign[j] = s >= 0 ? 1 : -1;
    }
  }
  return out;
}

std::vector<ComplexMatrix> rotate_two_mode(const std::vector<ComplexMatrix>& states, double phi) {
  if (states.empty()) return {};
  const Index da = states.front().rows(), db = states.front().cols();
  for (const ComplexMatrix& s : states) {
    if (s.rows() != da || s.cols() != db) {
      fail(ErrorKind::InvalidDimension, "rotate_two_mode: states must share dimensions");
    }
  }
  const Index n_max = da + db - 2;
  const Index dim = n_max + 1;
  const Index count = static_cast<Index>(states.size());
  std::vector<ComplexMatrix> out(states.size(), ComplexMatrix::Zero(dim, dim));
  for (Index n = 0; n <= n_max; ++n) {
    const SectorSpectrum sector = sector_spectrum(static_cast<int>(n));
    const Index size = n + 1;
    // D^dagger x with D = diag((-i)^k), stacked over states.
    ComplexMatrix x = ComplexMatrix::Zero(size, count);
    bool any = false;
    for (Index k = std::max<Index>(0, n - db + 1); k <= std::min(n, da - 1); ++k) {
      const Complex dk = i_power(k);
      for (Index s = 0; s < count; ++s) {
        x(k, s) = dk * states[s](k, n - k);
        any = any || x(k, s) != Complex(0);
      }
    }
    if (!any) continue;
    const RMatrix<double>& v = sector.vectors;
    ComplexMatrix c(size, count);
    c.real() = v.transpose() * x.real();
    c.imag() = v.transpose() * x.imag();
    for (Index j = 0; j < size; ++j) c.row(j) *= std::polar(1.0, -phi * sector.eigenvalue(j));
    ComplexMatrix y(size, count);
    y.real() = v * c.real();
    y.imag() = v * c.imag();
    for (Index k = 0; k < size; ++k) {
      const Complex dk = i_power(-k);
      for (Index s = 0; s < count; ++s) out[s](k, n - k) = dk * y(k, s);
    }
  }
  return out;
}

}  // namespace qmetro
