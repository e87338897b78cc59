#include "qmetro/interferometer.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/states.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace qmetro;

namespace {

const Family kAll[] = {Family::Fock,    Family::Coherent,       Family::EvenCat,
                       Family::OddCat,  Family::SqueezedVacuum, Family::Spssv};
const Family kEvenOdd[] = {Family::Fock, Family::EvenCat, Family::OddCat, Family::SqueezedVacuum,
                           Family::Spssv};

double sinh2(double x) { return std::sinh(x) * std::sinh(x); }

}  // namespace

TEST_CASE("theta term") {
  for (double r : {0.0, 0.4, 1.2})
    for (double nth : {0.0, 0.7, 3.0}) CHECK(qfi_closed(PureStateSpec::fock(5), {r, nth}).theta == 0);

  const double cat = theta_term(moments_closed(PureStateSpec::even_cat(2)), {1, 0});
  CHECK(std::abs(cat - 4 * std::sinh(2.0)) < 1e-12);
  CHECK(std::abs(cat - 14.5074) < 1e-4);

  const double coh = theta_term(moments_closed(PureStateSpec::coherent(2)), {1, 1});
  CHECK(std::abs(coh - 4 * (std::sinh(2.0) - 8 * std::cosh(2.0)) / 3) < 1e-12);
  CHECK(std::abs(coh - (-35.294)) < 1e-3);

  // the displacement term drops out with a vacuum-temperature reference
  const double coh0 = theta_term(moments_closed(PureStateSpec::coherent(2)), {1, 0});
  CHECK(std::abs(coh0 - 4 * std::sinh(2.0)) < 1e-12);
}

TEST_CASE("closed-form QFI examples") {
  const QfiBreakdown f1 = qfi_closed(PureStateSpec::fock(1), {0, 1});
  CHECK(f1.F == doctest::Approx(4.0));
  CHECK(1 / std::sqrt(f1.F) == doctest::Approx(0.5));

  const QfiBreakdown coh = qfi_closed(PureStateSpec::coherent(2), {0, 0});
  CHECK(coh.F == doctest::Approx(4.0));
  CHECK(coh.F == doctest::Approx(coh.nT));

  const QfiBreakdown f4 = qfi_closed(PureStateSpec::fock(4), {1, 1});
  CHECK(std::abs(f4.nb - (3 * sinh2(1) + 1)) < 1e-12);
  CHECK(std::abs(f4.nb - 5.14329) < 1e-5);
  CHECK(std::abs(f4.F - 50.289) < 1e-3);
  CHECK(f4.F_sql == f4.nT);
  CHECK(f4.F_hl == f4.nT * f4.nT);
}

TEST_CASE("pure-state QFI") {
  const ComplexVector vac = ComplexVector::Unit(3, 0);
  CHECK(qfi_pure(vac, vac) == doctest::Approx(0).epsilon(1e-15));
  for (int n : {1, 2, 5}) {
    CHECK(qfi_pure(pure_ket(PureStateSpec::fock(n), n + 1), vac) == doctest::Approx(double(n)));
  }
  // mode b is squeezed with the reference-beam phase (theta = 0)
  const ComplexVector b = squeeze_columns(200, 1.0, 0.0, 1).col(0);
  const ComplexVector a = pure_ket(PureStateSpec::coherent(2), TruncationPolicy{});
  const double expected = std::exp(2.0) * 4 + sinh2(1);
  CHECK(std::abs(qfi_pure(a, b) - expected) < 1e-8);
  CHECK(std::abs(qfi_pure(a, b) - 30.937) < 1e-3);
}

TEST_CASE("spectral oracle") {
  SUBCASE("vacuum reference reduces to the pure-state value") {
    for (Family f : kAll) {
      const PureStateSpec s = spec_for_mean_photons(f, 3);
      const ComplexVector a = pure_ket(s, TruncationPolicy{});
      const ComplexVector b = ComplexVector::Unit(2, 0);
      CAPTURE(s.describe());
      CHECK(std::abs(qfi_spectral_oracle(s, {0, 0}).F - qfi_pure(a, b)) < 1e-8);
    }
  }
  SUBCASE("single photon against a squeezed thermal beam") {
    const double nb = 2 * sinh2(0.3) + 0.5;
    CHECK(std::abs(nb - 0.685465) < 1e-6);
    const OracleResult o = qfi_spectral_oracle(PureStateSpec::fock(1), {0.3, 0.5});
    CHECK(std::abs(o.F - (1 + 3 * nb)) < 1e-6);
    CHECK(std::abs(o.F - 3.05640) < 1e-5);
    CHECK(!o.skipped_weight_reported());
  }
  SUBCASE("even cat against a thermal beam") {
    const double na = 4 * std::tanh(4.0);
    const OracleResult o = qfi_spectral_oracle(PureStateSpec::even_cat(2), {0, 2});
    CHECK(std::abs(o.F - (5 * na + 2)) < 1e-6);
    CHECK(std::abs(o.F - 21.987) < 1e-3);
  }
  SUBCASE("independent dense oracle") {
    // brute-force eigendecomposition of the full joint density matrix
    const SqueezedThermalSpec thermal{0.2, 0.1};
    const Index db = 16;
    ComplexMatrix rho_b = ComplexMatrix::Zero(db + 1, db + 1);
    const ComplexMatrix small = squeezed_thermal_density(thermal, db, 1e-9);
    rho_b.topLeftCorner(db, db) = small / small.trace();
    for (const PureStateSpec& s : {PureStateSpec::fock(1), PureStateSpec::coherent(0.6),
                                   PureStateSpec::odd_cat(0.5)}) {
      CAPTURE(s.describe());
      const ComplexVector a = resized(pure_ket(s, 9, 1e-9), 10);
      const ComplexMatrix rho = tensor_product(ComplexMatrix(a * a.adjoint()), rho_b);
      const double dense = qfi_mixed(rho, schwinger({10, db + 1}).jy);
      TruncationPolicy policy;
      policy.tail_tolerance = 1e-9;
      CHECK(std::abs(dense - qfi_spectral_oracle(s, thermal, policy).F) < 1e-6);
      CHECK(std::abs(dense - qfi_closed(s, thermal).F) < 1e-6);
    }
  }
  SUBCASE("limits") {
    TruncationPolicy tiny;
    tiny.max_joint_dim = 50;
    try {
      qfi_spectral_oracle(PureStateSpec::coherent(2), {1, 1}, tiny);
      FAIL("expected resource-limit");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
    TruncationPolicy forced;
    forced.cutoff_b = 10;
    try {
      qfi_spectral_oracle(PureStateSpec::fock(1), {1, 1}, forced);
      FAIL("expected truncation-overflow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TruncationOverflow);
    }
  }
}

TEST_CASE("benchmarks") {
  const Benchmarks b8 = benchmarks(8);
  CHECK(b8.F_sql == 8);
  CHECK(b8.F_hl == 64);
  const Benchmarks b1 = benchmarks(1);
  CHECK(b1.F_sql == 1);
  CHECK(b1.F_hl == 1);
  CHECK(b1.dphi_sql == 1);
  CHECK(b1.dphi_hl == 1);
  const Benchmarks b9 = benchmarks(9);
  CHECK(b9.dphi_sql / b9.dphi_hl == doctest::Approx(3.0));
  CHECK_THROWS_AS(benchmarks(0), Error);
  CHECK_THROWS_AS(benchmarks(-2), Error);
}

TEST_CASE("coherent thresholds") {
  const ThresholdReport r1 = thresholds({1, 0});
  CHECK(std::abs(r1.sql_crossing_nth - (std::exp(2.0) - 1) / 2) < 1e-12);
  CHECK(std::abs(r1.sql_crossing_nth - 3.19453) < 1e-5);
  CHECK(std::abs(r1.theta_positive_nth - 0.200719) < 1e-5);
  const ThresholdReport r0 = thresholds({0, 0});
  CHECK(r0.sql_crossing_nth == 0);
  CHECK(r0.theta_positive_nth == 0);

  // both sides of each threshold
  for (double r : {0.5, 1.0, 1.5}) {
    const ThresholdReport t = thresholds({r, 0});
    const PureStateSpec coh = PureStateSpec::coherent(2);
    CHECK(qfi_closed(coh, {r, t.sql_crossing_nth * 0.99}).beats_sql());
    CHECK(!qfi_closed(coh, {r, t.sql_crossing_nth * 1.01}).beats_sql());
    CHECK(qfi_closed(coh, {r, t.theta_positive_nth * 0.99}).theta > 0);
    CHECK(qfi_closed(coh, {r, t.theta_positive_nth * 1.01}).theta < 0);
  }
}

TEST_CASE("cat Heisenberg condition") {
  const SqueezedThermalSpec thermal{1, 0};
  double lo = 0.5, hi = 50;
  REQUIRE(cat_hl_residual(lo, thermal) * cat_hl_residual(hi, thermal) < 0);
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (cat_hl_residual(mid, thermal) * cat_hl_residual(lo, thermal) > 0 ? lo : hi) = mid;
  }
  const double na = lo;
  const QfiBreakdown q = qfi_closed(PureStateSpec::even_cat(std::sqrt(na)), thermal);
  CHECK(std::abs(q.F / (q.nT * q.nT) - 1) < 1e-2);
}

TEST_CASE("closed-form invariants") {
  std::vector<SqueezedThermalSpec> grid;
  for (double r : {0.0, 0.3, 1.0, 1.5})
    for (double nth : {0.0, 0.5, 2.0, 7.0}) grid.push_back({r, nth});

  for (Family f : kAll) {
    for (double na : {1.5, 4.0, 9.0}) {
      const PureStateSpec s = spec_for_mean_photons(f, na);
      for (const SqueezedThermalSpec& t : grid) {
        CAPTURE(s.describe());
        CAPTURE(t.r);
        CAPTURE(t.nth);
        const QfiBreakdown q = qfi_closed(s, t);
        CHECK(q.identity_residual() <= 1e-12 * std::max(1.0, q.F));
        CHECK(q.F >= 0);
        CHECK(q.sql_criterion_consistent());
        CHECK(std::abs(qfi_family_formula(s, t) - q.F) <= 1e-10 * q.F);
        if (is_even_odd(f)) CHECK(q.theta >= 0);
      }
    }
  }
}

TEST_CASE("even/odd universality at r = 0") {
  for (double nth : {0.0, 0.3, 1.0, 4.0, 10.0}) {
    const SqueezedThermalSpec t{0, nth};
    const double reference = qfi_even_odd_unsqueezed(4, nth);
    for (Family f : kEvenOdd) {
      CAPTURE(family_name(f));
      CHECK(std::abs(qfi_closed(spec_for_mean_photons(f, 4), t).F - reference) < 1e-9);
    }
  }
  CHECK(qfi_even_odd_unsqueezed(4, 4) == doctest::Approx(40.0));
}

TEST_CASE("large photon-number approximations") {
  for (double alpha0 : {2.0, 2.5, 3.5}) {
    for (double r : {0.0, 0.5, 1.0, 1.5}) {
      for (double nth : {0.0, 1.0, 3.0}) {
        const SqueezedThermalSpec t{r, nth};
        for (const PureStateSpec& s : {PureStateSpec::even_cat(alpha0), PureStateSpec::odd_cat(alpha0)}) {
          const QfiBreakdown q = qfi_closed(s, t);
          CHECK(std::abs(qfi_large_na_approx(q.na, t) - q.F) / q.F < 1e-2);
        }
      }
    }
  }
  // squeezed vacuum: the gap is (T/2) sinh 2r (1 - e^{-2R}), exact at r = 0
  for (double R : {std::asinh(2.0), 2.0, 3.0}) {
    for (double r : {0.0, 0.5, 1.0}) {
      for (double nth : {0.0, 1.0, 3.0}) {
        const SqueezedThermalSpec t{r, nth};
        const QfiBreakdown q = qfi_closed(PureStateSpec::squeezed_vacuum(R), t);
        const double T = 2 * nth + 1;
        const double gap = T / 2 * std::sinh(2 * r) * (1 - std::exp(-2 * R));
        CHECK(std::abs(q.F - qfi_large_na_approx(q.na, t) - gap) < 1e-9 * q.F);
        if (r == 0) CHECK(std::abs(qfi_large_na_approx(q.na, t) - q.F) < 1e-9 * q.F);
      }
    }
  }
}
