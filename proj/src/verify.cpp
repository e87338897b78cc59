#include "qmetro/verify.hpp"

#include "qmetro/error.hpp"
#include "qmetro/parallel.hpp"
#include "qmetro/phase_space.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/sensitivity.hpp"
#include "qmetro/sweep.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace qmetro {

namespace {

constexpr double kOracleTolerance = 1e-5;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kParityTolerance = 1e-6;
constexpr double kWignerTolerance = 1e-6;
constexpr double kAttainLo = 0.999;
constexpr double kAttainHi = 1.005;

std::string cell_name(const PureStateSpec& pure, const SqueezedThermalSpec& thermal) {
  return pure.describe() + " r=" + format_number(thermal.r) + " nth=" + format_number(thermal.nth);
}

CheckResult check(std::string name, bool passed, double measured, double tolerance,
                  std::string detail = {}) {
  return {std::move(name), passed, measured, tolerance, std::move(detail)};
}

std::string complex_text(Complex z) {
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

using Task = std::function<std::vector<CheckResult>()>;

std::vector<CheckResult> oracle_checks(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                                       const VerifyOptions& options) {
  const std::string cell = cell_name(pure, thermal);
  const QfiBreakdown closed = qfi_closed(pure, thermal);
  const double F_closed = closed.F * (1 + options.tamper);
  const OracleResult oracle = qfi_spectral_oracle(pure, thermal, options.policy);
  const double rel = std::abs(F_closed - oracle.F) / std::abs(F_closed);
  std::ostringstream detail;
  detail << "F_closed=" << format_number(F_closed) << " F_oracle=" << format_number(oracle.F)
         << " dims=" << oracle.dim_a << "x" << oracle.dim_b;
  if (oracle.skipped_weight_reported()) {
    detail << " skipped_weight=" << format_number(oracle.skipped_weight);
  }
  const double identity = closed.identity_residual() / std::max(1.0, std::abs(closed.F));
  return {check("qfi-oracle[" + cell + "]", rel < kOracleTolerance, rel, kOracleTolerance,
                detail.str()),
          check("qfi-identity[" + cell + "]", identity < kIdentityTolerance, identity,
                kIdentityTolerance)};
}

std::vector<CheckResult> parity_checks(const PureStateSpec& pure, const SqueezedThermalSpec& thermal,
                                       const VerifyOptions& options) {
  const std::string cell = cell_name(pure, thermal);
  const ParityTraceSignal signal(pure, thermal, options.policy);
  std::vector<CheckResult> out;

  double worst = 0;
  std::ostringstream detail;
  for (double phi : {0.05, 0.2, 0.5, 1.0}) {
    const double closed = parity_closed(pure, phi, thermal);
    const double quad = parity_quadrature(pure, phi, thermal).value;
    const double trace = signal.value(phi);
    const double diff = std::max({std::abs(closed - quad), std::abs(closed - trace),
                                  std::abs(quad - trace)});
    if (diff >= worst) {
      worst = diff;
      detail.str("");
      detail << "phi=" << format_number(phi) << " closed=" << format_number(closed)
             << " quadrature=" << format_number(quad) << " trace=" << format_number(trace);
    }
  }
  out.push_back(check("parity-routes[" + cell + "]", worst < kParityTolerance, worst,
                      kParityTolerance, detail.str()));

  if (options.level == VerifyLevel::Full) {
    const double F = qfi_closed(pure, thermal).F;
    const CrbReport report = attainment_from_signal(signal, F);
    if (report.vacuous) {
      out.push_back(check("crb-attainment[" + cell + "]", true, report.attainment_ratio, kAttainLo,
                          "vacuous: F=0 and the parity signal is constant"));
    } else {
      const double ratio = report.attainment_ratio;
      std::ostringstream d;
      d << "dphi=" << format_number(report.dphi_parity_limit)
        << " crb=" << format_number(report.dphi_crb);
      out.push_back(check("crb-attainment[" + cell + "]", ratio >= kAttainLo && ratio <= kAttainHi,
                          ratio, kAttainHi, d.str()));

      const std::vector<double> grid = log_phase_grid();
      const SensitivityCurve curve = sensitivity_curve(signal, grid);
      double lowest = std::numeric_limits<double>::infinity();
      double at = 0;
      for (size_t k = 0; k < curve.phi.size(); ++k) {
        const double v = curve.dphi[k] * std::sqrt(F);
        if (v < lowest) {
          lowest = v;
          at = curve.phi[k];
        }
      }
      out.push_back(check("crb-bound[" + cell + "]", lowest >= kAttainLo, lowest, kAttainLo,
                          "min dphi*sqrt(F) at phi=" + format_number(at)));
    }
  }
  return out;
}

std::vector<CheckResult> wigner_checks(double phi, const VerifyOptions& options) {
  const PureStateSpec pure = PureStateSpec::fock(1);
  const SqueezedThermalSpec thermal{0.5, 0.5};
  OutputWignerOracle oracle(pure, thermal, phi, options.policy);
  const std::vector<double> axis{-2, -1, 0, 1, 2};
  std::vector<Complex> points;
  for (double re : axis)
    for (double im : axis) points.emplace_back(re, im);
  oracle.prepare(points);
  double worst = 0;
  std::string where;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = 0; j < points.size(); ++j) {
      const double lhs = oracle.value_on_grid(Index(i), Index(j));
      const double rhs = output_wigner(pure, thermal, phi, {points[i], points[j]});
      const double diff = std::abs(lhs - rhs);
      if (diff > worst) {
        worst = diff;
        where = "alpha=" + complex_text(points[i]) + " beta=" + complex_text(points[j]);
      }
    }
  }
  return {check("wigner-identity[" + cell_name(pure, thermal) + " phi=" + format_number(phi) + "]",
                worst < kWignerTolerance, worst, kWignerTolerance,
                "625 points, dim " + std::to_string(oracle.dim()) + ", worst at " + where)};
}

}  // namespace

std::vector<std::pair<PureStateSpec, SqueezedThermalSpec>> parity_cells() {
  const std::vector<PureStateSpec> states{
      PureStateSpec::fock(0),          PureStateSpec::fock(1),
      PureStateSpec::fock(2),          PureStateSpec::even_cat(2),
      PureStateSpec::odd_cat(2),       PureStateSpec::squeezed_vacuum(1.45),
      PureStateSpec::spssv(std::asinh(1.0))};
  std::vector<std::pair<PureStateSpec, SqueezedThermalSpec>> cells;
  for (const PureStateSpec& s : states) {
    cells.push_back({s, {0, 0}});
    cells.push_back({s, {1, 1}});
  }
  return cells;
}

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const CheckResult& c : checks) n += !c.passed;
  return n;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.measured)
       << " tol=" << format_number(c.tolerance);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  os << checks.size() - failures() << "/" << checks.size() << " checks passed\n";
  return os.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> labels;
  std::vector<Task> tasks;

  const Family families[] = {Family::Fock,    Family::Coherent,       Family::EvenCat,
                             Family::OddCat,  Family::SqueezedVacuum, Family::Spssv};
  for (Family f : families) {
    const PureStateSpec pure = spec_for_mean_photons(f, 4);
    for (double r : {0.0, 0.3, 1.0}) {
      for (double nth : {0.0, 0.5, 2.0}) {
        const SqueezedThermalSpec thermal{r, nth};
        labels.push_back("qfi-oracle[" + cell_name(pure, thermal) + "]");
        tasks.push_back([=, &options] { return oracle_checks(pure, thermal, options); });
      }
    }
  }
  for (const auto& [pure, thermal] : parity_cells()) {
    labels.push_back("parity[" + cell_name(pure, thermal) + "]");
    tasks.push_back([pure = pure, thermal = thermal, &options] {
      return parity_checks(pure, thermal, options);
    });
  }
  if (options.level == VerifyLevel::Full) {
    for (double phi : {M_PI / 6, M_PI / 2}) {
      labels.push_back("wigner-identity[phi=" + format_number(phi) + "]");
      tasks.push_back([phi, &options] { return wigner_checks(phi, options); });
    }
  }

  std::vector<std::vector<CheckResult>> results(tasks.size());
  parallel_for(tasks.size(), options.threads, [&](size_t i) {
    try {
      results[i] = tasks[i]();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ResourceLimit) {
        fail(e.kind(), labels[i] + ": " + e.message(), e.suggested_dim());
      }
      results[i] = {check(labels[i], false, std::nan(""), 0,
                          e.what())};
    }
  });

  VerifyReport report;
  for (auto& r : results) {
    for (auto& c : r) report.checks.push_back(std::move(c));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qmetro
