#include "qmetro/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace qmetro {

namespace {

// Normalised Hermite functions psi_0..psi_n at x; returns psi_n and psi_{n-1}
// and accumulates sum_{j<n} psi_j^2.
struct HermiteEval {
  double psi_n = 0, psi_nm1 = 0, sum_sq = 0;
};

HermiteEval hermite_functions(Index n, double x) {
  HermiteEval h;
  double prev = 0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  for (Index k = 0; k < n; ++k) {
    h.sum_sq += cur * cur;
    const double next = std::sqrt(2.0 / double(k + 1)) * x * cur -
                        std::sqrt(double(k) / double(k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  h.psi_n = cur;
  h.psi_nm1 = prev;
  return h;
}

}  // namespace

GaussHermiteRule gauss_hermite(Index n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "gauss_hermite: need at least one node");
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.scaled_weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0;
    rule.scaled_weights[0] = std::sqrt(M_PI);
    return rule;
  }
  RVector<double> diag = RVector<double>::Zero(n);
  RVector<double> sub(n - 1);
  for (Index k = 1; k < n; ++k) sub[k - 1] = std::sqrt(double(k) / 2);
  Eigen::SelfAdjointEigenSolver<RMatrix<double>> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  for (Index k = 0; k < n; ++k) {
    double x = solver.eigenvalues()[k];
    for (int it = 0; it < 3; ++it) {
      const HermiteEval h = hermite_functions(n, x);
      // d/dx psi_n = sqrt(2n) psi_{n-1} - x psi_n
      const double deriv = std::sqrt(2.0 * double(n)) * h.psi_nm1 - x * h.psi_n;
      if (deriv == 0) break;
      x -= h.psi_n / deriv;
    }
    rule.nodes[k] = x;
    rule.scaled_weights[k] = 1 / hermite_functions(n, x).sum_sq;
  }
  return rule;
}

namespace {

const GaussHermiteRule& cached_rule(Index n) {
  static std::mutex mutex;
  static std::map<Index, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
  return it->second;
}

double plane_sum(const std::function<double(double, double)>& f, double kx, double ky, Index n) {
  const GaussHermiteRule& rule = cached_rule(n);
  const double sx = 1 / std::sqrt(kx), sy = 1 / std::sqrt(ky);
  double total = 0;
  for (Index i = 0; i < n; ++i) {
    const double x = sx * rule.nodes[i];
    double row = 0;
    for (Index j = 0; j < n; ++j) row += rule.scaled_weights[j] * f(x, sy * rule.nodes[j]);
    total += rule.scaled_weights[i] * row;
  }
  return sx * sy * total;
}

}  // namespace

QuadratureResult integrate_plane(const std::function<double(double, double)>& f, double kx,
                                 double ky, const QuadratureConfig& config) {
  if (!(kx > 0) || !(ky > 0)) fail(ErrorKind::InvalidInput, "integrate_plane: envelope must be positive");
  Index n = std::max<Index>(2, config.initial_nodes);
  double previous = plane_sum(f, kx, ky, n);
  double diff = 0;
  while (2 * n <= config.max_nodes) {
    n *= 2;
    const double current = plane_sum(f, kx, ky, n);
    diff = std::abs(current - previous);
    if (diff < config.tolerance) return {current, diff, n};
    previous = current;
  }
  fail(ErrorKind::QuadratureNonconvergence,
       "quadrature did not converge at " + std::to_string(n) + " nodes per axis; last change " +
           std::to_string(diff));
}

}  // namespace qmetro
