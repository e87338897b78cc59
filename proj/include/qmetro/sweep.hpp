#pragma once

#include "qmetro/config.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/states.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmetro {

struct SweepConfig {
  std::vector<Family> families{Family::Fock,    Family::Coherent,       Family::EvenCat,
                               Family::OddCat,  Family::SqueezedVacuum, Family::Spssv};
  /// Target mean photon number of mode a; each family parameter is solved from it
  /// unless an explicit override is given.
  double na = 4;
  std::optional<int> fock_n;
  std::optional<double> coherent_alpha0, cat_alpha0, sqvac_R, spssv_Rprime;

  std::vector<double> r{0, 1, 1.5};
  double nth_min = 0;
  double nth_max = 10;
  Index nth_count = 101;

  bool oracle = false;  // fill F_oracle
  bool parity = false;  // fill dphi_parity from the trace signal at phi_small
  double phi_small = 1e-3;
  TruncationPolicy policy;
  std::string gnuplot;  // optional plot script path
  int threads = 1;

  std::vector<double> nth_grid() const;
  PureStateSpec state_for(Family family) const;
};

/// Reads a sweep (or, with `single_cell`, a table) configuration. For tables
/// `r` and `nth` are single values.
SweepConfig read_sweep_config(const ConfigFile& file, bool single_cell);
SweepConfig default_table_config();

struct SweepRow {
  Family family = Family::Fock;
  double r = 0;
  double nth = 0;
  QfiBreakdown qfi;
  std::optional<double> F_oracle;
  double dphi_crb = 0;
  std::optional<double> dphi_parity;
  double dphi_sql = 0;
  double dphi_hl = 0;
};

SweepRow compute_row(const SweepConfig& config, Family family, double r, double nth);

/// One row per family at the single (r, nth) cell.
std::vector<SweepRow> run_table1(const SweepConfig& config);
/// Blocks ordered by family, then r, then nth; rows are computed on
/// `config.threads` workers and returned in grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

extern const char* const kCsvHeader;
/// 12 significant digits, C locale, `inf`/`nan` spelled out.
std::string format_number(double value);
std::string to_csv(const std::vector<SweepRow>& rows);
std::string gnuplot_script(const SweepConfig& config, const std::string& csv_path);

}  // namespace qmetro
