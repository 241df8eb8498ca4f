#include "diracbag/run.hpp"
#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include "diracbag/shooting.hpp"
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace diracbag {

namespace {

constexpr double integrator_tol = 1e-12;
constexpr double default_root_tol = 1e-12;

template <typename T>
T require(std::string_view flag, const T &value, bool ok, std::string_view why) {
  if (!ok)
    throw UsageError(std::string(flag) + ": " + std::string(why));
  return value;
}

ojson number(double x) {
  if (!std::isfinite(x))
    return nullptr;
  return x;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // keep a marker that this is a floating value (e.g. "3" -> "3.0")
  if (s.find_first_of(".eEn") == std::string::npos)
    s += ".0";
  return s;
}

void dump(std::ostringstream &os, const ojson &j, int depth) {
  const std::string pad(std::size_t(2 * (depth + 1)), ' ');
  const std::string close(std::size_t(2 * depth), ' ');
  switch (j.type()) {
  case ojson::value_t::object: {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto &[key, value] : j.items()) {
      if (!first)
        os << ",\n";
      first = false;
      os << pad << ojson(key).dump() << ": ";
      dump(os, value, depth + 1);
    }
    os << "\n" << close << "}";
    return;
  }
  case ojson::value_t::array: {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i)
        os << ",\n";
      os << pad;
      dump(os, j[i], depth + 1);
    }
    os << "\n" << close << "]";
    return;
  }
  case ojson::value_t::number_float: {
    const double x = j.get<double>();
    os << (std::isfinite(x) ? format_double(x) : "null");
    return;
  }
  default:
    os << j.dump();
  }
}

std::string csv_cell(const ojson &j) {
  switch (j.type()) {
  case ojson::value_t::null:
    return "";
  case ojson::value_t::number_float:
    return format_double(j.get<double>());
  case ojson::value_t::string:
    return j.get<std::string>();
  default:
    return j.dump();
  }
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

OutputRecord start(const RunConfig &cfg) {
  OutputRecord record;
  record.inputs = inputs_json(cfg);
  return record;
}

ojson partial_sum_rows(const SecondOrderResult &s) {
  ojson rows = ojson::array();
  for (const auto &p : s.partial_sums)
    rows.push_back({{"prescription", to_string(s.prescription)},
                    {"scheme", to_string(s.scheme)},
                    {"cutoff", p.cutoff},
                    {"partial_sum", number(p.value)}});
  return rows;
}

ojson second_order_diagnostics(const SecondOrderResult &s) {
  return {{"prescription", to_string(s.prescription)},
          {"scheme", to_string(s.scheme)},
          {"cauchy_residual", number(s.cauchy_residual)},
          {"tolerance", number(s.tolerance)},
          {"converged", s.converged}};
}

} // namespace

std::string_view to_string(Command c) {
  switch (c) {
  case Command::spectrum: return "spectrum";
  case Command::shift: return "shift";
  case Command::compare: return "compare";
  case Command::convergence: return "convergence";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) {
  return f == OutputFormat::json ? "json" : "csv";
}

Command parse_command(std::string_view text) {
  for (auto c : {Command::spectrum, Command::shift, Command::compare,
                 Command::convergence})
    if (text == to_string(c))
      return c;
  throw UsageError("unknown command '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "json")
    return OutputFormat::json;
  if (text == "csv")
    return OutputFormat::csv;
  throw UsageError("unknown format '" + std::string(text) + "' (expected json|csv)");
}

void validate(const RunConfig &cfg) {
  require("--a", cfg.a, std::isfinite(cfg.a) && cfg.a > 0.0, "must be finite and > 0");
  require("--mass", cfg.mass, std::isfinite(cfg.mass) && cfg.mass >= 0.0,
          "must be finite and >= 0");
  require("--lambda", cfg.lambda, std::isfinite(cfg.lambda), "must be finite");
  if (cfg.window) {
    const auto [lo, hi] = *cfg.window;
    require("--window", lo, std::isfinite(lo) && std::isfinite(hi) && lo < hi,
            "needs finite lo < hi");
  }
  if (cfg.levels)
    require("--levels", *cfg.levels, *cfg.levels >= 1 && *cfg.levels <= 100000,
            "must be in 1..100000");
  if (cfg.tol)
    require("--tol", *cfg.tol, std::isfinite(*cfg.tol) && *cfg.tol > 0.0,
            "must be finite and > 0");
  if (cfg.command == Command::spectrum) {
    require("spectrum", 0, cfg.window.has_value() || cfg.levels.has_value(),
            "needs --window lo:hi or --levels n");
  } else {
    require("--cutoff", cfg.cutoff, cfg.cutoff >= 4 && cfg.cutoff <= 1000000,
            "must be in 4..1000000");
  }
}

ojson inputs_json(const RunConfig &cfg) {
  ojson in;
  in["command"] = to_string(cfg.command);
  in["a"] = number(cfg.a);
  in["mass"] = number(cfg.mass);
  in["lambda"] = number(cfg.lambda);
  in["window"] = cfg.window ? ojson::array({number(cfg.window->first),
                                            number(cfg.window->second)})
                            : ojson(nullptr);
  in["levels"] = cfg.levels ? ojson(*cfg.levels) : ojson(nullptr);
  in["cutoff"] = cfg.cutoff;
  in["tol"] = cfg.tol ? number(*cfg.tol) : ojson(nullptr);
  in["prescription"] = to_string(cfg.prescription);
  in["format"] = to_string(cfg.format);
  in["run_id"] = run_id(cfg);
  return in;
}

std::string run_id(const RunConfig &cfg) {
  std::ostringstream os;
  os << to_string(cfg.command) << '|' << format_double(cfg.a) << '|'
     << format_double(cfg.mass) << '|' << format_double(cfg.lambda) << '|';
  if (cfg.window)
    os << format_double(cfg.window->first) << ':' << format_double(cfg.window->second);
  os << '|' << (cfg.levels ? std::to_string(*cfg.levels) : "") << '|' << cfg.cutoff
     << '|' << (cfg.tol ? format_double(*cfg.tol) : "") << '|'
     << to_string(cfg.prescription);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

OutputRecord run_spectrum(const RunConfig &cfg) {
  const BagConfig bag{cfg.a, cfg.mass, cfg.lambda};
  const double root_tol = cfg.tol.value_or(default_root_tol);
  Spectrum spectrum;
  if (cfg.window) {
    spectrum = find_levels(bag, cfg.window->first, cfg.window->second, root_tol);
  } else {
    // grow (0, E) until it holds the requested number of positive levels
    const int wanted = *cfg.levels;
    double e = massless_level(cfg.a, wanted) + cfg.mass +
               std::abs(cfg.lambda) * cfg.a;
    for (;;) {
      spectrum = find_levels(bag, 0.0, e, root_tol);
      if (int(spectrum.modes.size()) >= wanted)
        break;
      e *= 1.5;
    }
    spectrum.modes.erase(spectrum.modes.begin() + wanted, spectrum.modes.end());
  }

  auto record = start(cfg);
  ojson levels = ojson::array();
  double max_deviation = 0.0;
  for (const auto &m : spectrum.modes) {
    ojson row{{"index", m.index()}, {"energy", number(m.energy())}};
    if (bag.massless()) {
      const double exact = massless_level(cfg.a, m.index());
      row["analytic"] = number(exact);
      row["deviation"] = number(m.energy() - exact);
      max_deviation = std::max(max_deviation, std::abs(m.energy() - exact));
    }
    row["norm_residual"] = number(m.norm_residual());
    row["boundary_residual"] = number(m.boundary_residual());
    levels.push_back(std::move(row));
  }
  record.results = {{"count", spectrum.modes.size()}, {"levels", std::move(levels)}};
  record.diagnostics = {
      {"solver", "shooting: RK5(4) Dormand-Prince, TOMS748 refinement"},
      {"window", {number(spectrum.e_min), number(spectrum.e_max)}},
      {"bracket_grid", number(spectrum.bracket_grid)},
      {"root_tol", number(spectrum.root_tol)},
      {"integrator_tol", number(integrator_tol)},
      {"shots", spectrum.shots}};
  if (bag.massless())
    record.diagnostics["max_analytic_deviation"] = number(max_deviation);
  return record;
}

OutputRecord run_shift(const RunConfig &cfg) {
  const BagConfig bag{cfg.a, cfg.mass, cfg.lambda};
  const auto report =
      second_order(bag, 0, cfg.prescription, cfg.cutoff, cfg.tol.value_or(0.0));
  const auto &s = report.second.front();
  const double w_exact = exact_shift(bag, 0);

  auto record = start(cfg);
  record.results = {{"level", 0},
                    {"prescription", to_string(s.prescription)},
                    {"w_first", number(report.w_first)},
                    {"w_second", number(s.value)},
                    {"w_total", number(report.w_first + s.value)},
                    {"w_exact", number(w_exact)},
                    {"deviation", number(std::abs(report.w_first + s.value - w_exact))},
                    {"partial_sums", partial_sum_rows(s)}};
  record.diagnostics = {{"cutoff", cfg.cutoff},
                        {"summation", second_order_diagnostics(s)}};
  return record;
}

OutputRecord run_compare(const RunConfig &cfg) {
  const BagConfig bag{cfg.a, cfg.mass, cfg.lambda};
  const auto report = compare(bag, 0, cfg.cutoff, cfg.tol.value_or(0.0));
  const auto *pauli = report.find(Prescription::pauli_respecting);
  const auto *feyn = report.find(Prescription::feynman);

  auto verdict = [&](Prescription p) -> ojson {
    const auto *v = report.verdict(p);
    return v->agrees ? ojson(*v->agrees) : ojson(nullptr);
  };

  ojson rows = ojson::array();
  for (const auto &v : report.verdicts) {
    const auto *s = report.find(v.prescription);
    rows.push_back({{"prescription", to_string(v.prescription)},
                    {"w_first", number(report.w_first)},
                    {"w_second", number(s->value)},
                    {"w_exact", number(*report.w_exact)},
                    {"deviation", number(v.deviation)},
                    {"converged", s->converged},
                    {"agrees", verdict(v.prescription)}});
  }

  auto record = start(cfg);
  record.results = {{"level", 0},
                    {"w_first", number(report.w_first)},
                    {"w_I", number(pauli->value)},
                    {"w_II", number(feyn->value)},
                    {"w_exact", number(*report.w_exact)},
                    {"agrees_I", verdict(Prescription::pauli_respecting)},
                    {"agrees_II", verdict(Prescription::feynman)},
                    {"rows", std::move(rows)}};
  record.diagnostics = {{"cutoff", cfg.cutoff},
                        {"agreement_tol", number(report.agreement_tol)},
                        {"summation", ojson::array({second_order_diagnostics(*pauli),
                                                    second_order_diagnostics(*feyn)})}};
  return record;
}

OutputRecord run_convergence(const RunConfig &cfg) {
  const BagConfig bag{cfg.a, cfg.mass, cfg.lambda};
  const auto table = coupling_table(bag, 0, cfg.cutoff);
  const double tol = cfg.tol.value_or(default_tolerance(bag));

  ojson rows = ojson::array();
  ojson traces = ojson::array();
  for (auto p : {Prescription::pauli_respecting, Prescription::feynman}) {
    for (auto scheme : {CutoffScheme::symmetric, CutoffScheme::asymmetric}) {
      const auto s = second_order(table, cfg.lambda, p, scheme, tol);
      for (auto &row : partial_sum_rows(s))
        rows.push_back(std::move(row));
      traces.push_back(second_order_diagnostics(s));
    }
  }
  auto record = start(cfg);
  record.results = {{"partial_sums", std::move(rows)}};
  record.diagnostics = {{"cutoff", cfg.cutoff},
                        {"matrix_elements", table.source},
                        {"traces", std::move(traces)}};
  return record;
}

OutputRecord run(const RunConfig &cfg) {
  validate(cfg);
  switch (cfg.command) {
  case Command::spectrum: return run_spectrum(cfg);
  case Command::shift: return run_shift(cfg);
  case Command::compare: return run_compare(cfg);
  case Command::convergence: return run_convergence(cfg);
  }
  throw UsageError("unknown command");
}

OutputRecord failure_record(const RunConfig &cfg, std::string_view kind,
                            std::string_view message) {
  auto record = start(cfg);
  record.results = nullptr;
  record.diagnostics = {{"error", {{"kind", kind}, {"message", message}}}};
  return record;
}

std::string table_key(const OutputRecord &record) {
  if (!record.inputs.is_object() || !record.inputs.contains("command"))
    return {};
  switch (parse_command(record.inputs.at("command").get<std::string>())) {
  case Command::spectrum: return "levels";
  case Command::compare: return "rows";
  case Command::shift:
  case Command::convergence: return "partial_sums";
  }
  return {};
}

std::string to_json(const OutputRecord &record) {
  ojson top;
  top["schema_version"] = record.schema_version;
  top["inputs"] = record.inputs;
  top["results"] = record.results;
  top["diagnostics"] = record.diagnostics;
  std::ostringstream os;
  dump(os, top, 0);
  os << "\n";
  return os.str();
}

std::string to_csv(const OutputRecord &record) {
  std::ostringstream os;
  const auto key = table_key(record);
  if (key.empty() || !record.results.is_object() || !record.results.contains(key))
    return "";
  const auto &rows = record.results.at(key);
  if (rows.empty())
    return "";
  bool first = true;
  for (const auto &[key, value] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << "\n";
  for (const auto &row : rows) {
    first = true;
    for (const auto &[key, value] : row.items()) {
      os << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::string render(const OutputRecord &record, OutputFormat format) {
  return format == OutputFormat::json ? to_json(record) : to_csv(record);
}

OutputRecord from_json(std::string_view text) {
  ojson top;
  try {
    top = ojson::parse(text);
  } catch (const ojson::parse_error &e) {
    throw UsageError(std::string("from_json: ") + e.what());
  }
  if (!top.is_object() || !top.contains("schema_version") || !top.contains("inputs") ||
      !top.contains("results") || !top.contains("diagnostics"))
    throw UsageError("from_json: missing top-level fields");
  OutputRecord record;
  record.schema_version = top.at("schema_version").get<std::string>();
  record.inputs = top.at("inputs");
  record.results = top.at("results");
  record.diagnostics = top.at("diagnostics");
  return record;
}

} // namespace diracbag
