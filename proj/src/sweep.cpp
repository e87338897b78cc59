#include "qmetro/sweep.hpp"

#include "qmetro/parallel.hpp"
#include "qmetro/phase_space.hpp"
#include "qmetro/sensitivity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace qmetro {

const char* const kCsvHeader =
    "family,r,nth,na,nb,nT,theta,F_closed,F_oracle,dphi_crb,dphi_parity,dphi_sql,dphi_hl";

namespace {

const std::set<std::string> kKnownKeys = {
    "families", "na",     "fock_n",    "coherent_alpha0", "cat_alpha0", "sqvac_R",
    "spssv_Rprime", "r",  "nth",       "nth_min",         "nth_max",    "nth_count",
    "oracle",   "parity", "phi_small", "cutoff_a",        "cutoff_b",   "tail_tolerance",
    "max_joint_dim", "gnuplot", "threads"};

Family family_or_fail(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) {
    fail(ErrorKind::ConfigError, "field 'families': unknown family '" + name +
                                     "' (expected fock, coherent, evencat, oddcat, sqvac, spssv)");
  }
  return *f;
}

void check_config(const SweepConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::ConfigError, msg);
  };
  require(!c.families.empty(), "field 'families': empty");
  require(c.na > 0, "field 'na': must be positive");
  require(!c.r.empty(), "field 'r': empty");
  for (double r : c.r) require(r >= 0 && r <= 4, "field 'r': values must lie in [0, 4]");
  require(c.nth_min >= 0 && c.nth_max >= c.nth_min, "fields 'nth_min'/'nth_max': need 0 <= min <= max");
  require(c.nth_count >= 1, "field 'nth_count': must be at least 1");
  require(c.phi_small > 0 && c.phi_small < 1, "field 'phi_small': must lie in (0, 1)");
  require(c.policy.tail_tolerance > 0 && c.policy.tail_tolerance < 1e-3,
          "field 'tail_tolerance': must lie in (0, 1e-3)");
  require(c.policy.max_joint_dim > 0, "field 'max_joint_dim': must be positive");
  require(c.threads >= 1 && c.threads <= 256, "field 'threads': must lie in [1, 256]");
}

}  // namespace

std::vector<double> SweepConfig::nth_grid() const {
  std::vector<double> grid(nth_count);
  if (nth_count == 1) {
    grid[0] = nth_min;
    return grid;
  }
  for (Index k = 0; k < nth_count; ++k) {
    grid[k] = nth_min + (nth_max - nth_min) * double(k) / double(nth_count - 1);
  }
  return grid;
}

PureStateSpec SweepConfig::state_for(Family family) const {
  switch (family) {
    case Family::Fock:
      if (fock_n) return PureStateSpec::fock(*fock_n);
      break;
    case Family::Coherent:
      if (coherent_alpha0) return PureStateSpec::coherent(*coherent_alpha0);
      break;
    case Family::EvenCat:
      if (cat_alpha0) return PureStateSpec::even_cat(*cat_alpha0);
      break;
    case Family::OddCat:
      if (cat_alpha0) return PureStateSpec::odd_cat(*cat_alpha0);
      break;
    case Family::SqueezedVacuum:
      if (sqvac_R) return PureStateSpec::squeezed_vacuum(*sqvac_R);
      break;
    case Family::Spssv:
      if (spssv_Rprime) return PureStateSpec::spssv(*spssv_Rprime);
      break;
  }
  return spec_for_mean_photons(family, na);
}

SweepConfig read_sweep_config(const ConfigFile& file, bool single_cell) {
  file.require_known(kKnownKeys);
  SweepConfig c = single_cell ? default_table_config() : SweepConfig{};
  if (file.has("families")) {
    c.families.clear();
    for (const std::string& name : file.get_strings("families", {})) {
      c.families.push_back(family_or_fail(name));
    }
  }
  c.na = file.get_double("na", c.na);
  if (file.has("fock_n")) c.fock_n = static_cast<int>(file.get_int("fock_n", 0));
  if (file.has("coherent_alpha0")) c.coherent_alpha0 = file.get_double("coherent_alpha0", 0);
  if (file.has("cat_alpha0")) c.cat_alpha0 = file.get_double("cat_alpha0", 0);
  if (file.has("sqvac_R")) c.sqvac_R = file.get_double("sqvac_R", 0);
  if (file.has("spssv_Rprime")) c.spssv_Rprime = file.get_double("spssv_Rprime", 0);
  c.r = file.get_doubles("r", c.r);
  if (single_cell) {
    if (c.r.size() != 1) fail(ErrorKind::ConfigError, "field 'r': table1 takes a single value");
    const double nth = file.get_double("nth", c.nth_min);
    c.nth_min = c.nth_max = nth;
    c.nth_count = 1;
  } else {
    if (file.has("nth")) fail(ErrorKind::ConfigError, "field 'nth': use nth_min, nth_max, nth_count for sweeps");
    c.nth_min = file.get_double("nth_min", c.nth_min);
    c.nth_max = file.get_double("nth_max", c.nth_max);
    c.nth_count = file.get_int("nth_count", c.nth_count);
  }
  c.oracle = file.get_bool("oracle", c.oracle);
  c.parity = file.get_bool("parity", c.parity);
  c.phi_small = file.get_double("phi_small", c.phi_small);
  c.policy.cutoff_a = file.get_int("cutoff_a", c.policy.cutoff_a);
  c.policy.cutoff_b = file.get_int("cutoff_b", c.policy.cutoff_b);
  c.policy.tail_tolerance = file.get_double("tail_tolerance", c.policy.tail_tolerance);
  c.policy.max_joint_dim = file.get_int("max_joint_dim", c.policy.max_joint_dim);
  c.gnuplot = file.get_string("gnuplot", c.gnuplot);
  c.threads = static_cast<int>(file.get_int("threads", c.threads));
  check_config(c);
  for (Family f : c.families) {
    try {
      c.state_for(f);
    } catch (const Error& e) {
      fail(ErrorKind::ConfigError, std::string("family ") + family_name(f) + ": " + e.message());
    }
  }
  return c;
}

SweepConfig default_table_config() {
  SweepConfig c;
  c.r = {1};
  c.nth_min = c.nth_max = 1;
  c.nth_count = 1;
  c.oracle = true;
  c.parity = true;
  return c;
}

SweepRow compute_row(const SweepConfig& config, Family family, double r, double nth) {
  const PureStateSpec pure = config.state_for(family);
  const SqueezedThermalSpec thermal{r, nth};
  SweepRow row;
  row.family = family;
  row.r = r;
  row.nth = nth;
  row.qfi = qfi_closed(pure, thermal);
  if (row.qfi.identity_residual() > 1e-12 * std::max(1.0, row.qfi.F)) {
    fail(ErrorKind::ToleranceBreach, pure.describe() + ": F differs from na + nb + 2 na nb + theta");
  }
  if (config.oracle) {
    row.F_oracle = qfi_spectral_oracle(pure, thermal, config.policy).F;
    if (std::abs(*row.F_oracle - row.qfi.F) > 1e-5 * row.qfi.F) {
      fail(ErrorKind::ToleranceBreach, pure.describe() + ": F_closed=" + format_number(row.qfi.F) +
                                           " but F_oracle=" + format_number(*row.F_oracle));
    }
  }
  row.dphi_crb = row.qfi.F > 0 ? crb(row.qfi.F) : std::numeric_limits<double>::infinity();
  if (config.parity) {
    const ParityTraceSignal signal(pure, thermal, config.policy);
    row.dphi_parity = local_dphi([&](double p) { return signal.value(p); }, config.phi_small,
                                 [&](double p) { return signal.derivative(p); });
  }
  const Benchmarks b = benchmarks(row.qfi.nT);
  row.dphi_sql = b.dphi_sql;
  row.dphi_hl = b.dphi_hl;
  return row;
}

std::vector<SweepRow> run_table1(const SweepConfig& config) {
  std::vector<SweepRow> rows(config.families.size());
  parallel_for(rows.size(), config.threads, [&](size_t i) {
    rows[i] = compute_row(config, config.families[i], config.r.front(), config.nth_min);
  });
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  const std::vector<double> nth = config.nth_grid();
  struct Cell {
    Family family;
    double r, nth;
  };
  std::vector<Cell> cells;
  for (Family f : config.families)
    for (double r : config.r)
      for (double n : nth) cells.push_back({f, r, n});
  std::vector<SweepRow> rows(cells.size());
  parallel_for(cells.size(), config.threads, [&](size_t i) {
    const Cell& c = cells[i];
    try {
      rows[i] = compute_row(config, c.family, c.r, c.nth);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "cell (" << family_name(c.family) << ", r=" << format_number(c.r)
         << ", nth=" << format_number(c.nth) << "): " << e.message();
      fail(e.kind(), os.str(), e.suggested_dim());
    }
  });
  return rows;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const SweepRow& row : rows) {
    out += family_name(row.family);
    for (const std::string& field :
         {format_number(row.r), format_number(row.nth), format_number(row.qfi.na),
          format_number(row.qfi.nb), format_number(row.qfi.nT), format_number(row.qfi.theta),
          format_number(row.qfi.F), opt(row.F_oracle), format_number(row.dphi_crb),
          opt(row.dphi_parity), format_number(row.dphi_sql), format_number(row.dphi_hl)}) {
      out += ',';
      out += field;
    }
    out += '\n';
  }
  return out;
}

std::string gnuplot_script(const SweepConfig& config, const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 'nth'\n"
     << "set ylabel 'dphi'\n"
     << "set logscale y\n";
  for (size_t k = 0; k < config.r.size(); ++k) {
    const std::string r = format_number(config.r[k]);
    os << "set title 'r = " << r << "'\n";
    os << "plot ";
    bool first = true;
    for (Family f : config.families) {
      if (!first) os << ", \\\n     ";
      first = false;
      os << "'" << csv_path << "' using (strcol(1) eq '" << family_name(f) << "' && $2 == " << r
         << " ? $3 : 1/0):10 with lines title '" << family_name(f) << "'";
    }
    os << ", \\\n     '" << csv_path << "' using ($2 == " << r
       << " ? $3 : 1/0):12 with points pt 1 title 'SQL'\n";
    if (k + 1 < config.r.size()) os << "pause -1\n";
  }
  return os.str();
}

}  // namespace qmetro
