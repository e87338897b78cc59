#include "qmetro/config.hpp"
#include "qmetro/error.hpp"
#include "qmetro/sweep.hpp"
#include "qmetro/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

int exit_code(qmetro::ErrorKind kind) {
  switch (kind) {
    case qmetro::ErrorKind::ConfigError: return 2;
    case qmetro::ErrorKind::ToleranceBreach: return 3;
    case qmetro::ErrorKind::ResourceLimit: return 4;
    default: return 1;
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) qmetro::fail(qmetro::ErrorKind::ConfigError, "cannot write '" + path + "'");
  out << text;
  if (!out) qmetro::fail(qmetro::ErrorKind::ConfigError, "write to '" + path + "' failed");
}

qmetro::ConfigFile load_config(const std::string& path) {
  if (path.empty()) {
    std::istringstream empty;
    return qmetro::ConfigFile::parse(empty, "<defaults>");
  }
  return qmetro::ConfigFile::load(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase estimation with a squeezed thermal reference beam"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<int> threads;
  std::optional<long> max_dim;
  std::string level = "fast";
  double tamper = 0;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_path, "output file (stdout when omitted)");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    cmd->add_option("--max-dim", max_dim, "largest joint Fock dimension")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* table1 = app.add_subcommand("table1", "closed-form QFI per family at one (r, nth)");
  CLI::App* sweep = app.add_subcommand("sweep", "phase uncertainty against nth, CSV");
  CLI::App* verify = app.add_subcommand("verify", "oracle and identity checks");
  common(table1);
  common(sweep);
  common(verify);
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--tamper", tamper, "perturb closed-form F by this relative amount");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      qmetro::VerifyOptions options;
      if (!config_path.empty()) {
        const qmetro::ConfigFile file = load_config(config_path);
        file.require_known({"level", "threads", "max_joint_dim", "tail_tolerance", "tamper"});
        level = file.get_string("level", level);
        options.threads = static_cast<int>(file.get_int("threads", options.threads));
        options.policy.max_joint_dim = file.get_int("max_joint_dim", options.policy.max_joint_dim);
        options.policy.tail_tolerance = file.get_double("tail_tolerance", options.policy.tail_tolerance);
        options.tamper = file.get_double("tamper", options.tamper);
      }
      if (level != "fast" && level != "full") {
        qmetro::fail(qmetro::ErrorKind::ConfigError, "field 'level': expected fast or full");
      }
      options.level = level == "full" ? qmetro::VerifyLevel::Full : qmetro::VerifyLevel::Fast;
      if (threads) options.threads = *threads;
      if (max_dim) options.policy.max_joint_dim = *max_dim;
      if (tamper != 0) options.tamper = tamper;

      const qmetro::VerifyReport report = qmetro::run_verify(options);
      const std::string text = report.text();
      if (!out_path.empty() && out_path != "-") {
        write_output(out_path, text);
        for (const auto& c : report.checks) {
          if (!c.passed) std::cerr << "FAIL " << c.name << "\n";
        }
        std::cout << report.checks.size() - report.failures() << "/" << report.checks.size()
                  << " checks passed\n";
      } else {
        std::cout << text;
      }
      return report.passed() ? 0 : 3;
    }

    const bool is_table = table1->parsed();
    qmetro::SweepConfig config =
        qmetro::read_sweep_config(load_config(config_path), is_table);
    if (threads) config.threads = *threads;
    if (max_dim) config.policy.max_joint_dim = *max_dim;

    const auto rows = is_table ? qmetro::run_table1(config) : qmetro::run_sweep(config);
    write_output(out_path, qmetro::to_csv(rows));
    if (!is_table && !config.gnuplot.empty()) {
      if (out_path.empty() || out_path == "-") {
        qmetro::fail(qmetro::ErrorKind::ConfigError, "field 'gnuplot': needs --out for the CSV path");
      }
      write_output(config.gnuplot, qmetro::gnuplot_script(config, out_path));
    }
    return 0;
  } catch (const qmetro::Error& e) {
    std::cerr << "qmetro: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qmetro: " << e.what() << "\n";
    return 1;
  }
}
