#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkt/scenario.hpp"

namespace qkt {

inline constexpr std::string_view kVersion = "0.1.0";

/// Column-named table of doubles. Integer-valued columns (counts, flags,
/// ids) are stored as exact doubles.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
  double at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

struct SweepMetadata {
  std::string scenario;
  std::string kind;
  std::string config_hash;
  std::string version;
  double wall_seconds = 0.0;  ///< JSON metadata only; CSV stays byte-stable
  double max_norm_drift = 0.0;
  std::size_t flagged_rows = 0;
};

/// Quantum kinds produce one row per grid cell with columns
///   cell, theta, phi, kappa1, kappa2, kappa_diff, sigma1, sigma2,
///   delta_s, mean_p1, samples, excluded_kicks, flagged
/// (kappa_diff = kappa2 - kappa1; flagged = 1 when some kick had vanishing
/// post-selection probability). Traces, when requested, hold
///   cell, n, s_cl, s_ps, delta_s, p1.
/// classical_map produces
///   trajectory_id, kick, theta, phi, X, Y, Z.
struct SweepResult {
  ScenarioConfig config;
  Table table;
  std::optional<Table> traces;
  SweepMetadata metadata;
};

struct RunOptions {
  int workers = 1;
  /// Share propagated branches between cells with the same initial state and
  /// kappa. Disabling recomputes branches per cell; results are identical.
  bool cache_branches = true;
};

SweepResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

enum class OutputFormat { csv, json };

/// %.17g, with "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double value);

std::string to_csv(const Table& table);
/// Inverse of to_csv. Throws ValidationError on malformed input.
Table parse_csv(std::string_view text);
std::string to_json(const SweepResult& result);

/// Writes <dir>/<output>.csv (plus <output>_traces.csv) or <dir>/<output>.json.
/// Returns the paths written. IO failures raise an io error naming the path.
std::vector<std::filesystem::path> emit(const SweepResult& result, const std::filesystem::path& dir,
                                        OutputFormat format);

}  // namespace qkt
