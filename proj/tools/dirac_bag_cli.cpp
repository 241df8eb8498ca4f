// Command-line front end for the Dirac bag solver. Talks to the library only
// through the C interface.

#include "diracbag/diracbag.h"
#include <CLI11.hpp>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_numeric = 1;
constexpr int exit_usage = 2;

std::optional<std::pair<double, double>> parse_window(const std::string &text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos)
    return std::nullopt;
  const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
  char *end = nullptr;
  errno = 0;
  const double a = std::strtod(lo.c_str(), &end);
  if (errno || end == lo.c_str() || *end != '\0')
    return std::nullopt;
  const double b = std::strtod(hi.c_str(), &end);
  if (errno || end == hi.c_str() || *end != '\0')
    return std::nullopt;
  return std::pair{a, b};
}

struct Options {
  double a = 1.0;
  double mass = 0.0;
  double lambda = 0.0;
  std::string window;
  int levels = 0;
  int cutoff = 100;
  std::optional<double> tol;
  std::string prescription = "feynman";
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App *cmd, Options &o) {
  cmd->add_option("--a", o.a, "bag half-width (> 0)");
  cmd->add_option("--mass", o.mass, "particle mass (>= 0)");
  cmd->add_option("--lambda", o.lambda, "slope of V(x) = lambda x");
  cmd->add_option("--tol", o.tol, "root tolerance (spectrum) or Cauchy tolerance");
  cmd->add_option("--format", o.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write output to PATH instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dirac bag with a linear potential: spectra and perturbative shifts"};
  app.require_subcommand(1);
  Options o;

  auto *spectrum = app.add_subcommand("spectrum", "levels inside an energy window");
  add_common(spectrum, o);
  spectrum->add_option("--window", o.window, "energy window lo:hi");
  spectrum->add_option("--levels", o.levels, "lowest n positive levels");

  auto *shift = app.add_subcommand("shift", "perturbative and exact ground-state shift");
  add_common(shift, o);
  shift->add_option("--cutoff", o.cutoff, "maximum |k| of intermediate levels");
  shift->add_option("--prescription", o.prescription, "feynman | pauli")
      ->check(CLI::IsMember({"feynman", "pauli"}));

  auto *compare = app.add_subcommand("compare", "both prescriptions against the exact shift");
  add_common(compare, o);
  compare->add_option("--cutoff", o.cutoff, "maximum |k| of intermediate levels");

  auto *convergence =
      app.add_subcommand("convergence", "partial-sum traces for both prescriptions and cutoff schemes");
  add_common(convergence, o);
  convergence->add_option("--cutoff", o.cutoff, "maximum |k| of intermediate levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  dbag_run_config cfg;
  dbag_run_config_init(&cfg);
  const std::string command = app.get_subcommands().front()->get_name();
  cfg.command = command.c_str();
  cfg.model = {o.a, o.mass, o.lambda};
  if (!o.window.empty()) {
    const auto w = parse_window(o.window);
    if (!w) {
      std::cerr << "--window: expected lo:hi, got '" << o.window << "'\n";
      return exit_usage;
    }
    cfg.has_window = 1;
    cfg.window_lo = w->first;
    cfg.window_hi = w->second;
  }
  cfg.levels = o.levels;
  cfg.cutoff = o.cutoff;
  if (o.tol) {
    cfg.has_tol = 1;
    cfg.tol = *o.tol;
  }
  cfg.prescription = o.prescription.c_str();
  cfg.format = o.format.c_str();

  dbag_output output = nullptr;
  const dbag_status status = dbag_run(&cfg, &output);
  if (status == DBAG_ERR_USAGE || status == DBAG_ERR_NULL) {
    std::cerr << "usage error: " << dbag_last_error() << "\n";
    return exit_usage;
  }

  const std::string text(dbag_output_text(output), dbag_output_length(output));
  dbag_output_destroy(output);
  if (status != DBAG_OK)
    std::cerr << dbag_status_string(status) << ": " << dbag_last_error() << "\n";

  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << text)) {
      std::cerr << "cannot write " << o.out << "\n";
      return exit_numeric;
    }
  }
  return status == DBAG_OK ? 0 : exit_numeric;
}
