#include "qmetro/phase_space.hpp"
#include "qmetro/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qmetro;

namespace {

constexpr double kTwoOverPi = 2 / M_PI;

std::vector<PureStateSpec> closed_form_states() {
  return {PureStateSpec::fock(0),     PureStateSpec::fock(1),
          PureStateSpec::fock(2),     PureStateSpec::even_cat(2),
          PureStateSpec::odd_cat(2),  PureStateSpec::even_cat(0.8),
          PureStateSpec::squeezed_vacuum(1.45), PureStateSpec::spssv(std::asinh(1.0))};
}

double norm_integral(const PureStateSpec& s) {
  double kx = 2, ky = 2;
  if (s.family == Family::SqueezedVacuum || s.family == Family::Spssv) {
    kx = 2 * std::exp(-2 * s.amplitude);
    ky = 2 * std::exp(2 * s.amplitude);
  }
  return integrate_plane([&](double x, double y) { return wigner_pure(s, {x, y}); }, kx, ky).value;
}

}  // namespace

TEST_CASE("gauss-hermite rule") {
  const GaussHermiteRule g = gauss_hermite(20);
  // integral of x^{2k} e^{-x^2} = Gamma(k + 1/2)
  for (int k = 0; k < 10; ++k) {
    double sum = 0;
    for (Index i = 0; i < 20; ++i) {
      const double x = g.nodes[i];
      sum += g.scaled_weights[i] * std::exp(-x * x) * std::pow(x, 2 * k);
    }
    CHECK(std::abs(sum - std::tgamma(k + 0.5)) < 1e-12 * std::tgamma(k + 0.5));
  }
  const QuadratureResult r =
      integrate_plane([](double x, double y) { return std::exp(-3 * x * x - 0.5 * y * y); }, 3, 0.5);
  CHECK(std::abs(r.value - M_PI / std::sqrt(1.5)) < 1e-12);
}

TEST_CASE("closed Wigner functions") {
  CHECK(wigner_pure(PureStateSpec::fock(0), 0) == doctest::Approx(kTwoOverPi));
  CHECK(wigner_pure(PureStateSpec::fock(1), 0) == doctest::Approx(-kTwoOverPi));
  CHECK(wigner_pure(PureStateSpec::even_cat(2), 0) == doctest::Approx(kTwoOverPi));
  CHECK(wigner_pure(PureStateSpec::odd_cat(2), 0) == doctest::Approx(-kTwoOverPi));
  for (double rp : {0.3, 0.881, 1.7}) {
    CHECK(wigner_pure(PureStateSpec::spssv(rp), 0) == doctest::Approx(-kTwoOverPi));
  }
  CHECK(wigner_squeezed_thermal({0, 1}, 0) == doctest::Approx(2 / (3 * M_PI)));

  SUBCASE("normalisation") {
    for (const PureStateSpec& s :
         {PureStateSpec::fock(0), PureStateSpec::fock(3), PureStateSpec::coherent(1.1),
          PureStateSpec::even_cat(1.5), PureStateSpec::odd_cat(1.5),
          PureStateSpec::squeezed_vacuum(0.8), PureStateSpec::spssv(0.6)}) {
      CAPTURE(s.describe());
      CHECK(std::abs(norm_integral(s) - 1) < 1e-6);
    }
    const SqueezedThermalSpec t{0.7, 1.3};
    const double T = 2 * t.nth + 1;
    const double total =
        integrate_plane([&](double x, double y) { return wigner_squeezed_thermal(t, {x, y}); },
                        2 * std::exp(2 * t.r) / T, 2 * std::exp(-2 * t.r) / T)
            .value;
    CHECK(std::abs(total - 1) < 1e-9);
  }
}

TEST_CASE("Wigner function from a density matrix") {
  ComplexMatrix vac = ComplexMatrix::Zero(10, 10);
  vac(0, 0) = 1;
  CHECK(std::abs(wigner_from_density(vac, 0) - kTwoOverPi) < 1e-12);

  const ComplexMatrix thermal = squeezed_thermal_density({0, 1}, 60);
  CHECK(std::abs(wigner_from_density(thermal, 0) - 2 / (3 * M_PI)) < 1e-12);

  const ComplexVector sv = pure_ket(PureStateSpec::squeezed_vacuum(0.5), 60);
  const ComplexMatrix rho = sv * sv.adjoint();
  const Complex alpha(0.3, 0.2);
  CHECK(std::abs(wigner_from_density(rho, alpha) -
                 wigner_pure(PureStateSpec::squeezed_vacuum(0.5), alpha)) < 1e-7);

  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const PureStateSpec& s : {PureStateSpec::fock(3), PureStateSpec::odd_cat(1.2),
                                 PureStateSpec::spssv(0.5), PureStateSpec::coherent(0.7)}) {
    // a generous cutoff; the default tail tolerance moves W by ~1e-7
    const ComplexVector v = pure_ket(s, 60);
    const ComplexMatrix r = v * v.adjoint();
    for (int k = 0; k < 5; ++k) {
      const Complex a(u(gen), u(gen));
      CAPTURE(s.describe());
      const double w = wigner_from_density(r, a);
      CHECK(std::abs(w - wigner_pure(s, a)) < 1e-9);
      CHECK(std::abs(w) <= kTwoOverPi + 1e-9);
    }
  }
}

TEST_CASE("coordinate rotation") {
  const PhasePoint p{{0.3, -1.1}, {0.7, 0.25}};
  const PhasePoint same = rotate_coordinates(p, 0);
  CHECK(std::abs(same.alpha - p.alpha) < 1e-15);
  CHECK(std::abs(same.beta - p.beta) < 1e-15);

  const PhasePoint half = rotate_coordinates(p, M_PI);
  CHECK(std::abs(half.alpha - p.beta) < 1e-15);
  CHECK(std::abs(half.beta + p.alpha) < 1e-15);

  const PhasePoint quarter = rotate_coordinates(p, M_PI / 2);
  CHECK(std::abs(quarter.alpha - (p.alpha + p.beta) / std::sqrt(2.0)) < 1e-15);

  for (double phi : {0.1, 1.3, 2.9}) {
    const PhasePoint q = rotate_coordinates(p, phi);
    CHECK(std::abs(std::norm(q.alpha) + std::norm(q.beta) - std::norm(p.alpha) - std::norm(p.beta)) < 1e-12);
  }
}

TEST_CASE("output Wigner function") {
  const PureStateSpec f1 = PureStateSpec::fock(1);
  const SqueezedThermalSpec t{0.5, 0.5};
  const PhasePoint p{{0.2, 0.4}, {-0.6, 0.1}};
  CHECK(output_wigner(f1, t, 0, p) == doctest::Approx(wigner_input(f1, t, p)));

  // two vacua: Gaussian in |alpha|^2 + |beta|^2 for every phase
  const PureStateSpec vac = PureStateSpec::fock(0);
  const SqueezedThermalSpec cold{0, 0};
  for (double phi : {0.4, 1.9}) {
    CHECK(output_wigner(vac, cold, phi, p) == doctest::Approx(output_wigner(vac, cold, 0, p)));
  }

  SUBCASE("density-matrix oracle, single photon and vacuum") {
    OutputWignerOracle oracle(f1, cold, M_PI / 2);
    std::vector<Complex> points;
    for (double re : {-2, -1, 0, 1, 2})
      for (double im : {-2, -1, 0, 1, 2}) points.emplace_back(re, im);
    oracle.prepare(points);
    double worst = 0;
    for (size_t i = 0; i < points.size(); ++i)
      for (size_t j = 0; j < points.size(); ++j)
        worst = std::max(worst, std::abs(oracle.value_on_grid(Index(i), Index(j)) -
                                         output_wigner(f1, cold, M_PI / 2, {points[i], points[j]})));
    CHECK(worst < 1e-6);
  }
  SUBCASE("density-matrix oracle, squeezed thermal reference") {
    OutputWignerOracle oracle(f1, t, M_PI / 3);
    for (const PhasePoint& q : {PhasePoint{{0.1, 0.2}, {0.3, -0.4}}, PhasePoint{{-0.5, 0}, {0, 0.5}}}) {
      CHECK(std::abs(oracle.value(q.alpha, q.beta) - output_wigner(f1, t, M_PI / 3, q)) < 1e-6);
    }
  }
}

TEST_CASE("Gaussian coefficients") {
  for (double r : {0.0, 0.5, 1.5}) {
    for (double nth : {0.0, 1.0, 4.0}) {
      const SqueezedThermalSpec t{r, nth};
      const double T = 2 * nth + 1;
      for (double phi : {0.0, 0.3, 1.0, 2.0, M_PI}) {
        const GaussCoefficients g = gauss_coefficients(phi, t, 2, 1.2);
        CHECK(g.A > 0);
        CHECK(g.B > 0);
        CHECK(g.A1 > 0);
        CHECK(g.B1 > 0);
      }
      const GaussCoefficients g0 = gauss_coefficients(0, t, 2, 1.2);
      CHECK(std::abs(g0.A * g0.B - 4 / (T * T)) < 1e-12 * g0.A * g0.B);
      CHECK(std::abs(g0.A1 * g0.B1 - 4 / (T * T)) < 1e-12 * g0.A1 * g0.B1);
    }
  }
}

TEST_CASE("closed-form parity") {
  SUBCASE("input parity at phi = 0") {
    for (const PureStateSpec& s : closed_form_states()) {
      for (const SqueezedThermalSpec& t : {SqueezedThermalSpec{0, 0}, SqueezedThermalSpec{1, 1}}) {
        CAPTURE(s.describe());
        CHECK(std::abs(parity_closed(s, 0, t) - s.parity()) < 1e-12);
      }
    }
    CHECK(std::abs(parity_closed(PureStateSpec::even_cat(2), 0, {0.3, 0.2}) - 1) < 1e-14);
    CHECK(std::abs(parity_closed(PureStateSpec::odd_cat(2), 0, {0.3, 0.2}) + 1) < 1e-14);
  }
  SUBCASE("examples") {
    for (double phi : {0.3, 1.0, 2.5}) CHECK(parity_closed(PureStateSpec::fock(0), phi, {0, 0}) == doctest::Approx(1.0));
    CHECK(std::abs(parity_closed(PureStateSpec::fock(1), M_PI / 2, {0, 0})) < 1e-14);
    const double sv = 2 / std::sqrt((1 + std::exp(-2.9)) * (1 + std::exp(2.9)));
    CHECK(std::abs(parity_closed(PureStateSpec::squeezed_vacuum(1.45), M_PI / 2, {0, 0}) - sv) < 1e-12);
    CHECK(std::abs(sv - 0.4447) < 1e-4);
  }
  SUBCASE("unsupported inputs") {
    for (const PureStateSpec& s : {PureStateSpec::fock(3), PureStateSpec::coherent(1)}) {
      CHECK(!has_parity_closed_form(s));
      try {
        parity_closed(s, 0.5, {0, 0});
        FAIL("expected unsupported-closed-form");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedClosedForm);
      }
    }
  }
}

TEST_CASE("quadrature parity") {
  CHECK(std::abs(parity_quadrature(PureStateSpec::fock(0), M_PI / 3, {0, 0}).value - 1) < 1e-9);
  CHECK(std::abs(parity_quadrature(PureStateSpec::fock(2), 0.4, {1, 1}).value -
                 parity_closed(PureStateSpec::fock(2), 0.4, {1, 1})) < 1e-7);
  CHECK(std::abs(parity_quadrature(PureStateSpec::even_cat(2), 0.2, {0.5, 0.5}).value -
                 parity_closed(PureStateSpec::even_cat(2), 0.2, {0.5, 0.5})) < 1e-7);
  // quadrature also covers inputs without a closed form
  CHECK(std::abs(parity_quadrature(PureStateSpec::fock(4), 0.7, {0.4, 0.3}).value -
                 parity_trace(PureStateSpec::fock(4), {0.4, 0.3}, 0.7)) < 1e-7);
  QuadratureConfig tight;
  tight.max_nodes = 16;
  tight.tolerance = 1e-15;
  CHECK_THROWS_AS(parity_quadrature(PureStateSpec::even_cat(2), 0.9, {1, 1}, tight), Error);
}

TEST_CASE("operator-trace parity") {
  for (const SqueezedThermalSpec& t : {SqueezedThermalSpec{0, 0}, SqueezedThermalSpec{0.5, 2}}) {
    CHECK(std::abs(parity_trace(PureStateSpec::odd_cat(2), t, 0) + 1) < 1e-8);
  }
  CHECK(std::abs(parity_trace(PureStateSpec::fock(4), {0, 0}, M_PI / 2)) < 1e-12);

  const PureStateSpec sp = PureStateSpec::spssv(std::asinh(1.0));
  CHECK(std::abs(parity_trace(sp, {1, 1}, 0.05) - parity_closed(sp, 0.05, {1, 1})) < 1e-6);

  SUBCASE("even in phi, bounded, derivative consistent") {
    for (const PureStateSpec& s : {PureStateSpec::coherent(1.2), PureStateSpec::fock(3),
                                   PureStateSpec::even_cat(1.5), PureStateSpec::spssv(0.6)}) {
      CAPTURE(s.describe());
      const ParityTraceSignal sig(s, {0.6, 0.4});
      for (double phi : {0.05, 0.4, 1.3, 2.8}) {
        CHECK(std::abs(sig.value(phi) - sig.value(-phi)) < 1e-12);
        CHECK(std::abs(sig.value(phi)) <= 1 + 1e-9);
        const double h = 1e-5;
        const double fd = (sig.value(phi + h) - sig.value(phi - h)) / (2 * h);
        CHECK(std::abs(sig.derivative(phi) - fd) < 1e-7);
      }
      CHECK(sig.tail_population() < 1e-10);
    }
  }
}

TEST_CASE("parity signals") {
  const PureStateSpec s = PureStateSpec::fock(2);
  const std::vector<double> grid{0.1, 0.2, 0.4, 0.8, 1.6};
  const ParitySignal closed = sample_parity(ParityRoute::Closed, s, {0.5, 0.5}, grid);
  const ParitySignal quad = sample_parity(ParityRoute::Quadrature, s, {0.5, 0.5}, grid);
  const ParitySignal trace = sample_parity(ParityRoute::Trace, s, {0.5, 0.5}, grid);
  for (size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(closed.values[k] - quad.values[k]) < 1e-7);
    CHECK(std::abs(closed.values[k] - trace.values[k]) < 1e-9);
  }
  CHECK(std::string(route_name(trace.route)) == "trace");
  CHECK_NOTHROW(closed.validate());

  ParitySignal bad = closed;
  bad.phi[2] = bad.phi[1];
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = closed;
  bad.values[0] = 1.1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = closed;
  bad.phi[0] = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}
