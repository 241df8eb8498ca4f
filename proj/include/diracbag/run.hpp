#pragma once

#include "diracbag/perturb.hpp"
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace diracbag {

using ojson = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "1.0";

enum class Command { spectrum, shift, compare, convergence };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);
Command parse_command(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct RunConfig {
  Command command = Command::spectrum;
  double a = 1.0;
  double mass = 0.0;
  double lambda = 0.0;
  std::optional<std::pair<double, double>> window;
  std::optional<int> levels;
  int cutoff = 100;
  std::optional<double> tol;
  Prescription prescription = Prescription::feynman;
  OutputFormat format = OutputFormat::json;
};

/// Rejects invalid parameters before any computation; throws UsageError.
void validate(const RunConfig &cfg);

/// Hex digest of the canonical inputs; identical configs share an id.
std::string run_id(const RunConfig &cfg);

/// Serialized result of one CLI run.
struct OutputRecord {
  std::string schema_version{diracbag::schema_version};
  ojson inputs;
  ojson results;
  ojson diagnostics;

  friend bool operator==(const OutputRecord &, const OutputRecord &) = default;
};

OutputRecord run_spectrum(const RunConfig &cfg);
OutputRecord run_shift(const RunConfig &cfg);
OutputRecord run_compare(const RunConfig &cfg);
OutputRecord run_convergence(const RunConfig &cfg);
/// Dispatches on cfg.command after validate().
OutputRecord run(const RunConfig &cfg);

/// Record describing a failed run (error kind and message in diagnostics).
OutputRecord failure_record(const RunConfig &cfg, std::string_view kind,
                            std::string_view message);

ojson inputs_json(const RunConfig &cfg);

/// Array inside `results` rendered as CSV rows: levels (spectrum),
/// partial_sums (shift, convergence) or rows (compare).
std::string table_key(const OutputRecord &record);

/// Doubles are written with 17 significant digits; NaN/inf become null.
std::string to_json(const OutputRecord &record);
/// Header row plus one row per element of results[table_key(record)].
std::string to_csv(const OutputRecord &record);
std::string render(const OutputRecord &record, OutputFormat format);

/// Inverse of to_json. Throws UsageError on malformed input.
OutputRecord from_json(std::string_view text);

} // namespace diracbag
