#pragma once

#include "qmetro/fock.hpp"
#include "qmetro/states.hpp"

#include <string>
#include <vector>

namespace qmetro {

enum class VerifyLevel { Fast, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  TruncationPolicy policy;
  /// Multiplies every closed-form F by (1 + tamper) before comparison; a
  /// harness self-test, 0 in normal runs.
  double tamper = 0;
  int threads = 1;
};

struct CheckResult {
  std::string name;  // invariant[cell]
  bool passed = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
  std::string text() const;
};

/// Cells used by the parity and attainment checks: Fock N = 0, 1, 2, both
/// cats at alpha0 = 2, squeezed vacuum R = 1.45 and SPSSV sinh^2 R' = 1, each at
/// (r, nth) = (0, 0) and (1, 1).
std::vector<std::pair<PureStateSpec, SqueezedThermalSpec>> parity_cells();

/// Runs the suite. Resource-limit errors propagate with the offending cell in
/// the message; any other failure is recorded as a failed check.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace qmetro
