#pragma once

#include "qmetro/fock.hpp"

#include <functional>

namespace qmetro {

/// n-point Gauss-Hermite rule for weight e^{-x^2}. `scaled_weights` holds
/// w_k e^{x_k^2}, which stays finite for every node, so a full integrand g can
/// be integrated as sum scaled_weights[k] * g(nodes[k]).
struct GaussHermiteRule {
  RVector<double> nodes;
  RVector<double> scaled_weights;
};

/// Nodes from the Jacobi matrix eigenvalues, polished by Newton steps on the
/// normalised Hermite function; weights from the Christoffel sum.
GaussHermiteRule gauss_hermite(Index n);

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  Index nodes = 0;  // per axis
};

struct QuadratureConfig {
  Index initial_nodes = 16;
  Index max_nodes = 256;
  double tolerance = 1e-9;  // successive-estimate difference
};

/// Integral over the plane of f(x, y), sampled on x = X / sqrt(kx), y = Y / sqrt(ky)
/// so a Gaussian envelope exp(-kx x^2 - ky y^2) maps onto the Hermite weight.
/// Node counts double until two estimates agree to the configured tolerance;
/// throws quadrature-nonconvergence otherwise.
QuadratureResult integrate_plane(const std::function<double(double, double)>& f, double kx,
                                 double ky, const QuadratureConfig& config = {});

}  // namespace qmetro
