#pragma once

// Truncated Fock-space linear algebra. Everything here is a free function
// templated on the real scalar type; the rest of the library instantiates it
// at double through the ComplexMatrix/ComplexVector aliases.

#include "qmetro/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace qmetro {

using Index = Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using Complex = std::complex<double>;

/// Largest joint dimension for which a dense two-mode operator is built.
inline constexpr Index kMaxDenseDim = 8000;

struct ModeDims {
  Index a = 0;
  Index b = 0;
  Index joint() const { return a * b; }
};

enum class Mode { A, B };

/// Cutoff choice for a two-mode computation. A zero cutoff means "pick it from
/// the analytic tail of the state family".
struct TruncationPolicy {
  Index cutoff_a = 0;
  Index cutoff_b = 0;
  double tail_tolerance = 1e-12;
  /// Upper bound on cutoff_a * cutoff_b for any two-mode computation.
  Index max_joint_dim = 400000;
};

template <typename Real>
struct Spectrum {
  RVector<Real> eigenvalues;    // descending
  CMatrix<Real> eigenvectors;   // columns, orthonormal

  CMatrix<Real> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<std::complex<Real>>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

namespace detail {

inline void require_dim(Index dim, Index minimum, const char* what) {
  if (dim < minimum) {
    fail(ErrorKind::InvalidDimension,
         std::string(what) + ": dimension " + std::to_string(dim) + " < " +
             std::to_string(minimum));
  }
}

}  // namespace detail

template <typename Real = double>
CMatrix<Real> annihilation(Index dim) {
  detail::require_dim(dim, 2, "annihilation");
  CMatrix<Real> a = CMatrix<Real>::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return a;
}

template <typename Real = double>
CMatrix<Real> number_operator(Index dim) {
  detail::require_dim(dim, 1, "number_operator");
  CMatrix<Real> n = CMatrix<Real>::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) n(k, k) = static_cast<Real>(k);
  return n;
}

/// (-1)^{a^dagger a}
template <typename Real = double>
CMatrix<Real> parity_operator(Index dim) {
  detail::require_dim(dim, 1, "parity_operator");
  CMatrix<Real> p = CMatrix<Real>::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? Real(1) : Real(-1);
  return p;
}

template <typename Derived>
typename Derived::RealScalar hermitian_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<typename Derived::RealScalar>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Hermitian eigendecomposition with eigenvalues in descending order.
template <typename Derived>
Spectrum<typename Derived::RealScalar> eigh(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidDimension, "eigh: matrix is not square");
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  if (hermitian_residual(m) > Real(1e-10) * scale) {
    fail(ErrorKind::InvalidInput, "eigh: matrix is not Hermitian");
  }
  CMatrix<Real> h = m.template cast<std::complex<Real>>();
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h);
  if (solver.info() != Eigen::Success) fail(ErrorKind::InvalidInput, "eigh: solver failed");
  Spectrum<Real> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// exp(-i t H) from a precomputed spectrum of H.
template <typename Real>
CMatrix<Real> unitary_from_spectrum(const Spectrum<Real>& spectrum, Real t) {
  const Index n = spectrum.eigenvalues.size();
  CVector<Real> phases(n);
  for (Index k = 0; k < n; ++k) phases[k] = std::polar(Real(1), -t * spectrum.eigenvalues[k]);
  return spectrum.eigenvectors * phases.asDiagonal() * spectrum.eigenvectors.adjoint();
}

/// exp(G) for anti-Hermitian G, computed from the spectrum of the Hermitian iG.
template <typename Derived>
CMatrix<typename Derived::RealScalar> expm_antihermitian(const Eigen::MatrixBase<Derived>& generator) {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> hermitian = std::complex<Real>(0, 1) * generator.template cast<std::complex<Real>>();
  return unitary_from_spectrum(eigh(hermitian), Real(1));
}

/// Smallest cutoff such that the squeezed-vacuum population on levels >= cutoff
/// is below `tail_tolerance`.
template <typename Real = double>
Index squeezed_vacuum_required_dim(Real r, Real tail_tolerance) {
  const Real t2 = std::pow(std::tanh(std::abs(r)), 2);
  if (t2 == Real(0)) return 1;
  if (t2 >= Real(1)) fail(ErrorKind::InvalidInput, "squeeze parameter too large");
  Real p = Real(1) / std::cosh(r);
  for (Index k = 0;; ++k) {
    // Remaining ratios are all below t2.
    if (p * t2 / (Real(1) - t2) < tail_tolerance) return 2 * k + 1;
    p *= t2 * Real(2 * k + 1) / Real(2 * k + 2);
  }
}

/// First `ncols` columns of S(xi) = exp[(xi^* a^2 - xi a^{dagger 2})/2], xi = r e^{i theta},
/// in a `dim`-level truncation. The generator splits into even and odd Fock
/// sectors, each a Hermitian tridiagonal matrix after a diagonal phase change,
/// so each sector is exponentiated from its own eigendecomposition.
template <typename Real = double>
CMatrix<Real> squeeze_columns(Index dim, Real r, Real theta, Index ncols) {
  detail::require_dim(dim, 2, "squeeze");
  if (r < Real(0)) fail(ErrorKind::InvalidInput, "squeeze: r must be non-negative");
  ncols = std::min(ncols, dim);
  CMatrix<Real> s = CMatrix<Real>::Zero(dim, ncols);
  if (r == Real(0)) {
    for (Index j = 0; j < ncols; ++j) s(j, j) = 1;
    return s;
  }
  const Real hphase = Real(M_PI / 2) - theta;  // arg of <n|i G|n+2>
  for (Index parity = 0; parity < 2; ++parity) {
    const Index size = (dim - parity + 1) / 2;
    const Index cols = (ncols - parity + 1) / 2;
    if (size <= 0 || cols <= 0) continue;
    RVector<Real> diag = RVector<Real>::Zero(size);
    RVector<Real> sub(std::max<Index>(size - 1, 1));
    for (Index k = 0; k + 1 < size; ++k) {
      const Real n = Real(parity + 2 * k);
      sub[k] = r / 2 * std::sqrt((n + 1) * (n + 2));
    }
    CVector<Real> d(size);
    for (Index k = 0; k < size; ++k) d[k] = std::polar(Real(1), -Real(k) * hphase);
    RMatrix<Real> v;
    RVector<Real> lambda;
    if (size == 1) {
      v = RMatrix<Real>::Identity(1, 1);
      lambda = RVector<Real>::Zero(1);
    } else {
      Eigen::SelfAdjointEigenSolver<RMatrix<Real>> solver;
      RVector<Real> subdiag = sub.head(size - 1);
      solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
      v = solver.eigenvectors();
      lambda = solver.eigenvalues();
    }
    CMatrix<Real> right(size, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index e = 0; e < size; ++e) {
        right(e, j) = std::polar(Real(1), -lambda[e]) * v(j, e) * std::conj(d[j]);
      }
    }
    const CMatrix<Real> block = v.template cast<std::complex<Real>>() * right;
    for (Index j = 0; j < cols; ++j) {
      for (Index k = 0; k < size; ++k) s(parity + 2 * k, parity + 2 * j) = d[k] * block(k, j);
    }
  }
  return s;
}

/// Full truncated squeeze operator. Throws truncation-overflow when the
/// squeezed vacuum would not fit in `dim` levels to `tail_tolerance`.
template <typename Real = double>
CMatrix<Real> squeeze_matrix(Index dim, Real r, Real theta, Real tail_tolerance = Real(1e-12)) {
  detail::require_dim(dim, 2, "squeeze_matrix");
  const Index needed = squeezed_vacuum_required_dim(r, tail_tolerance);
  if (needed > dim) {
    fail(ErrorKind::TruncationOverflow,
         "squeeze_matrix: r=" + std::to_string(r) + " needs dim >= " + std::to_string(needed),
         needed);
  }
  return squeeze_columns(dim, r, theta, dim);
}

/// D(alpha) = exp(alpha a^dagger - alpha^* a), exponentiated through eigh.
template <typename Real = double>
CMatrix<Real> displacement_matrix(Index dim, std::complex<Real> alpha) {
  const CMatrix<Real> a = annihilation<Real>(dim);
  const CMatrix<Real> generator = alpha * a.adjoint() - std::conj(alpha) * a;
  return expm_antihermitian(generator);
}

template <typename DA, typename DB>
CMatrix<typename DA::RealScalar> tensor_product(const Eigen::MatrixBase<DA>& a,
                                                const Eigen::MatrixBase<DB>& b,
                                                Index max_dim = kMaxDenseDim) {
  using Real = typename DA::RealScalar;
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    fail(ErrorKind::InvalidDimension, "tensor_product: operands must be square");
  }
  const Index n = a.rows() * b.rows();
  if (n > max_dim) {
    fail(ErrorKind::ResourceLimit, "tensor_product: dimension " + std::to_string(n) +
                                       " exceeds limit " + std::to_string(max_dim));
  }
  CMatrix<Real> out(n, n);
  const Index nb = b.rows();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * nb, j * nb, nb, nb) =
          std::complex<Real>(a(i, j)) * b.template cast<std::complex<Real>>();
    }
  }
  return out;
}

/// Reduced state of one mode; joint index is n_a * dims.b + n_b.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& rho,
                                                    ModeDims dims, Mode keep) {
  using Real = typename Derived::RealScalar;
  if (rho.rows() != rho.cols() || rho.rows() != dims.joint() || dims.a < 1 || dims.b < 1) {
    fail(ErrorKind::InvalidDimension, "partial_trace: dimension mismatch");
  }
  const Index da = dims.a, db = dims.b;
  if (keep == Mode::A) {
    CMatrix<Real> out = CMatrix<Real>::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j)
        for (Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(db, db);
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

/// Tr(rho * obs)
template <typename DR, typename DO>
std::complex<typename DR::RealScalar> expectation(const Eigen::MatrixBase<DR>& rho,
                                                  const Eigen::MatrixBase<DO>& obs) {
  if (rho.rows() != rho.cols() || obs.rows() != obs.cols() || rho.rows() != obs.rows()) {
    fail(ErrorKind::InvalidDimension, "expectation: dimension mismatch");
  }
  return rho.cwiseProduct(obs.transpose()).sum();
}

/// a|v>, same truncation.
template <typename Real>
CVector<Real> lower(const CVector<Real>& v) {
  CVector<Real> out = CVector<Real>::Zero(v.size());
  for (Index n = 1; n < v.size(); ++n) out[n - 1] = std::sqrt(Real(n)) * v[n];
  return out;
}

/// a^dagger|v>, grown by one level so nothing is cut off.
template <typename Real>
CVector<Real> raise(const CVector<Real>& v) {
  CVector<Real> out = CVector<Real>::Zero(v.size() + 1);
  for (Index n = 0; n < v.size(); ++n) out[n + 1] = std::sqrt(Real(n + 1)) * v[n];
  return out;
}

/// Zero-pads (or checks) a vector to `dim` levels.
template <typename Real>
CVector<Real> resized(const CVector<Real>& v, Index dim) {
  CVector<Real> out = CVector<Real>::Zero(dim);
  const Index n = std::min(dim, v.size());
  out.head(n) = v.head(n);
  return out;
}

}  // namespace qmetro
