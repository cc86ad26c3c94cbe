// qkt: command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "qkt/qkt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string out_dir;
  int workers = 1;
  std::string format = "csv";
  int kicks = 0;
};

using ScenarioHandle = std::unique_ptr<qkt_scenarios, decltype(&qkt_scenarios_destroy)>;
using ResultHandle = std::unique_ptr<qkt_result, decltype(&qkt_result_destroy)>;

int exit_code_for(qkt_status s) {
  switch (s) {
    case QKT_OK: return kExitOk;
    case QKT_ERR_VALIDATION:
    case QKT_ERR_INVALID_ARGUMENT: return kExitValidation;
    case QKT_ERR_NUMERICAL:
    case QKT_ERR_VANISHING_PROBABILITY:
    case QKT_ERR_NON_PHYSICAL_STATE: return kExitNumerical;
    default: return kExitFailure;
  }
}

int report(qkt_status s) {
  std::cerr << "qkt: " << qkt_status_name(s) << ": " << qkt_last_error_message() << "\n";
  return exit_code_for(s);
}

int run_all(qkt_scenarios* raw, const Options& opt, bool classical_only) {
  ScenarioHandle scenarios(raw, qkt_scenarios_destroy);
  const std::size_t count = qkt_scenarios_count(scenarios.get());
  if (classical_only) {
    for (std::size_t i = 0; i < count; ++i) {
      if (std::strcmp(qkt_scenarios_kind(scenarios.get(), i), "classical_map") != 0) {
        std::cerr << "qkt: validation error: scenarios[" << i << "].kind: the classical "
                  << "subcommand only runs classical_map scenarios\n";
        return kExitValidation;
      }
    }
  }
  if (opt.kicks > 0) {
    if (const auto s = qkt_scenarios_set_kicks(scenarios.get(), opt.kicks); s != QKT_OK) {
      return report(s);
    }
  }
  const qkt_format format = opt.format == "json" ? QKT_FORMAT_JSON : QKT_FORMAT_CSV;
  for (std::size_t i = 0; i < count; ++i) {
    qkt_result* raw_result = nullptr;
    if (const auto s = qkt_run(scenarios.get(), i, opt.workers, &raw_result); s != QKT_OK) {
      return report(s);
    }
    ResultHandle result(raw_result, qkt_result_destroy);
    char path[4096] = {};
    if (const auto s = qkt_result_write(result.get(), opt.out_dir.c_str(), format, path,
                                        sizeof path);
        s != QKT_OK) {
      return report(s);
    }
    std::cout << qkt_scenarios_name(scenarios.get(), i) << ": "
              << qkt_result_rows(result.get()) << " rows -> " << path;
    if (const auto flagged = qkt_result_flagged_rows(result.get()); flagged > 0) {
      std::cout << " (" << flagged << " flagged)";
    }
    std::cout << "\n";
    std::fprintf(stderr, "%s: %.3f s\n", qkt_scenarios_name(scenarios.get(), i),
                 qkt_result_wall_seconds(result.get()));
  }
  return kExitOk;
}

int run_from_file(const std::string& path, const Options& opt, bool classical_only) {
  qkt_scenarios* raw = nullptr;
  if (const auto s = qkt_scenarios_from_file(path.c_str(), &raw); s != QKT_OK) return report(s);
  return run_all(raw, opt, classical_only);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked-top interferometer simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qkt_version()));

  Options opt;
  const char* env_dir = std::getenv("QKT_OUT_DIR");
  opt.out_dir = env_dir && *env_dir ? env_dir : "out";

  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--out-dir", opt.out_dir, "Output directory (default $QKT_OUT_DIR or ./out)");
    cmd->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--kicks", opt.kicks, "Override the kick count of every scenario")
        ->check(CLI::PositiveNumber);
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every scenario in a config file");
  run->add_option("config", config_path, "Scenario file (JSON)")->required();
  add_common(run);

  std::string classical_path;
  auto* classical = app.add_subcommand("classical", "Run a classical_map scenario file");
  classical->add_option("config", classical_path, "Scenario file (JSON)")->required();
  add_common(classical);

  std::string preset_name;
  bool list = false;
  bool dump = false;
  auto* preset = app.add_subcommand("preset", "Run a shipped figure preset");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list, "List preset names and exit");
  preset->add_flag("--dump", dump, "Print the preset config and exit");
  add_common(preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (run->parsed()) return run_from_file(config_path, opt, false);
  if (classical->parsed()) return run_from_file(classical_path, opt, true);

  if (list) {
    for (std::size_t i = 0; i < qkt_preset_count(); ++i) std::cout << qkt_preset_name(i) << "\n";
    return kExitOk;
  }
  if (preset_name.empty()) {
    std::cerr << "qkt: validation error: preset: a name is required (see --list)\n";
    return kExitValidation;
  }
  if (dump) {
    const char* text = qkt_preset_json(preset_name.c_str());
    if (!text) {
      std::cerr << "qkt: validation error: " << qkt_last_error_message() << "\n";
      return kExitValidation;
    }
    std::cout << text << "\n";
    return kExitOk;
  }
  qkt_scenarios* raw = nullptr;
  if (const auto s = qkt_scenarios_from_preset(preset_name.c_str(), &raw); s != QKT_OK) {
    return report(s);
  }
  return run_all(raw, opt, false);
}
