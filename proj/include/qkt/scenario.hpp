#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkt/diagnostics.hpp"

namespace qkt {

enum class ScenarioKind {
  sigma_sweep,
  kappa_diff_sweep,
  sigma_kappa_heatmap,
  phi_scan,
  sigma1_sigma2_contour,
  classical_map,
  supplementary,
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

struct KappaPair {
  double kappa1;
  double kappa2;
};

/// One runnable experiment. Grids are stored resolved (explicit values).
///
/// Axes per kind, outermost first; rows are emitted row-major in this order:
///   sigma_sweep            theta, phi, kappa_pairs, sigma          (sigma1 = sigma2)
///   kappa_diff_sweep       theta, phi, sigma, kappa_diff
///   sigma_kappa_heatmap    theta, phi, kappa_diff, sigma
///   phi_scan               kappa_pairs, sigma, theta, phi
///   sigma1_sigma2_contour  theta, phi, kappa_pairs, sigma1, sigma2
///   classical_map          theta, phi                              (one kappa)
/// For the kappa-difference kinds kappa2 = kappa1 + kappa_diff_sign * diff.
/// `supplementary` never reaches the runner: loading expands it into a
/// sigma_sweep, a kappa_diff_sweep over `sigma_curves` and a heatmap.
struct ScenarioConfig {
  std::string name;
  ScenarioKind kind = ScenarioKind::sigma_sweep;
  int j = 25;
  double alpha = pi / 2.0;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<KappaPair> kappa_pairs;
  double kappa1 = 0.0;
  std::vector<double> kappa_diff;
  int kappa_diff_sign = 1;
  double kappa = 0.0;  ///< classical_map only
  std::vector<double> sigma;
  std::vector<double> sigma_curves;  ///< supplementary only
  std::vector<double> sigma1;
  std::vector<double> sigma2;
  double phi1 = 0.0;
  double phi2 = 0.0;
  int n_kicks = 200;
  EntropyBase entropy_base = EntropyBase::bits;
  bool record_traces = false;
  std::string output;  ///< file stem; defaults to name

  /// Number of rows the runner will produce (trajectories for classical_map).
  std::size_t cell_count() const;
};

/// Parses a scenario file: either one scenario object or
/// {"scenarios": [ ... ]}. Grids accept a number, a list, or
/// {"start", "stop", "count"} / {"values"} with optional "unit": "pi".
/// Throws ValidationError naming the offending field.
std::vector<ScenarioConfig> parse_scenarios(std::string_view json_text);
std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path);

/// Checks grid counts, sigma ranges, kick count and the fields each kind
/// needs. `path` prefixes field names in error messages.
void validate(const ScenarioConfig& config, const std::string& path = "");

/// Canonical JSON of the resolved config; its FNV-1a hash identifies a run.
std::string to_json(const ScenarioConfig& config);
std::string config_hash(const ScenarioConfig& config);

/// Shipped presets: fig1, fig3, fig4, fig5a-c, fig6a-c, figS1, figS2.
std::vector<std::string> preset_names();
std::string preset_json(std::string_view name);
std::vector<ScenarioConfig> load_preset(std::string_view name);

}  // namespace qkt
