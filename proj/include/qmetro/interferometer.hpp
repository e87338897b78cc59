#pragma once

#include "qmetro/fock.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qmetro {

/// J_x, J_y, J_z on the truncated two-mode space, joint index n_a * dims.b + n_b.
struct SchwingerOps {
  ComplexMatrix jx, jy, jz;
  ModeDims dims;
};

SchwingerOps schwinger(ModeDims dims, Index max_dim = kMaxDenseDim);

/// Total photon number a^dagger a + b^dagger b on the joint space.
ComplexMatrix total_number(ModeDims dims);

/// exp(-i phi J_y) from one Hermitian eigendecomposition of J_y, reused for
/// every phase.
class MziPropagator {
 public:
  explicit MziPropagator(ModeDims dims, Index max_dim = kMaxDenseDim);

  ModeDims dims() const { return dims_; }
  const Spectrum<double>& spectrum() const { return spectrum_; }
  const SchwingerOps& ops() const { return ops_; }

  ComplexMatrix unitary(double phi) const;
  ComplexMatrix evolve(const ComplexMatrix& rho, double phi) const;
  ComplexVector evolve(const ComplexVector& psi, double phi) const;

 private:
  ModeDims dims_;
  SchwingerOps ops_;
  Spectrum<double> spectrum_;
};

ComplexMatrix mzi_unitary(double phi, ModeDims dims, Index max_dim = kMaxDenseDim);
ComplexMatrix evolve(const ComplexMatrix& rho_in, double phi, ModeDims dims,
                     Index max_dim = kMaxDenseDim);

/// The same unitary assembled as exp(-i pi J_x/2) exp(i phi J_z) exp(i pi J_x/2).
ComplexMatrix beam_splitter_composition(double phi, ModeDims dims, Index max_dim = kMaxDenseDim);

/// Row 0 gives U^dagger a U = c(0,0) a + c(0,1) b, row 1 gives U^dagger b U.
Eigen::Matrix2d heisenberg_transform(double phi);

/// Eigenvectors of J_y restricted to the sector with n photons in total, in the
/// basis |k, n-k>, k = 0..n. After the phase change D = diag((-i)^k) the
/// restriction is a real tridiagonal matrix with eigenvalues j - n/2, so the
/// eigenvectors come from inverse iteration at the known eigenvalues.
struct SectorSpectrum {
  int photons = 0;
  RMatrix<double> vectors;        // column j has eigenvalue j - photons/2
  std::vector<int> partner_sign;  // (-1)^{n_a} maps column j to sign * column (photons - j)

  double eigenvalue(Index j) const { return double(j) - 0.5 * photons; }
};

SectorSpectrum sector_spectrum(int photons);

/// U(phi) applied to two-mode pure states stored as amplitude matrices
/// psi(n_a, n_b). Sectors are closed under U, so the result is exact for the
/// given input; the output has (n_max + 1) x (n_max + 1) entries with
/// n_max = psi.rows() + psi.cols() - 2.
std::vector<ComplexMatrix> rotate_two_mode(const std::vector<ComplexMatrix>& states, double phi);

}  // namespace qmetro
