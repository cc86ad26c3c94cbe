#include "qkt/qkt.h"

#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "qkt/classical_map.hpp"
#include "qkt/sweep.hpp"

struct qkt_branches {
  qkt::BranchPair pair;
};

struct qkt_scenarios {
  std::vector<qkt::ScenarioConfig> configs;
  std::vector<std::string> kinds;
  std::vector<std::string> dumps;

  void refresh() {
    kinds.clear();
    dumps.clear();
    for (const auto& c : configs) {
      kinds.emplace_back(qkt::to_string(c.kind));
      dumps.push_back(qkt::to_json(c));
    }
  }
};

struct qkt_result {
  qkt::SweepResult result;
};

namespace {

thread_local std::string last_error;

qkt_status status_for(qkt::ErrorCode code) {
  switch (code) {
    case qkt::ErrorCode::invalid_dimension:
    case qkt::ErrorCode::invalid_argument: return QKT_ERR_INVALID_ARGUMENT;
    case qkt::ErrorCode::non_physical_state: return QKT_ERR_NON_PHYSICAL_STATE;
    case qkt::ErrorCode::numerical: return QKT_ERR_NUMERICAL;
    case qkt::ErrorCode::vanishing_probability: return QKT_ERR_VANISHING_PROBABILITY;
    case qkt::ErrorCode::validation: return QKT_ERR_VALIDATION;
    case qkt::ErrorCode::io: return QKT_ERR_IO;
  }
  return QKT_ERR_INTERNAL;
}

qkt_status fail(qkt_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
qkt_status guarded(F&& f) {
  try {
    f();
    return QKT_OK;
  } catch (const qkt::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(QKT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QKT_ERR_INTERNAL, "unknown error");
  }
}

qkt::InterferometerSetting to_setting(const qkt_setting& s) {
  return {{s.sigma1, s.phi1}, {s.sigma2, s.phi2}};
}

qkt::EntropyBase to_base(qkt_entropy_base b) {
  return b == QKT_ENTROPY_NATS ? qkt::EntropyBase::nats : qkt::EntropyBase::bits;
}

void to_bloch(const qkt::ConditionalState& state, qkt::SpinDimension d, double out[3]) {
  const auto b = qkt::single_qubit_reduction(state.expectations, d);
  out[0] = b.x;
  out[1] = b.y;
  out[2] = b.z;
}

qkt_status null_argument(const char* what) {
  return fail(QKT_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

template <class Load>
qkt_status make_scenarios(qkt_scenarios** out, Load&& load) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<qkt_scenarios>();
    s->configs = load();
    s->refresh();
    *out = s.release();
  });
}

}  // namespace

extern "C" {

QKT_API const char* qkt_version(void) { return qkt::kVersion.data(); }

QKT_API const char* qkt_last_error_message(void) { return last_error.c_str(); }

QKT_API const char* qkt_status_name(qkt_status status) {
  switch (status) {
    case QKT_OK: return "ok";
    case QKT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QKT_ERR_VALIDATION: return "validation error";
    case QKT_ERR_NUMERICAL: return "numerical error";
    case QKT_ERR_VANISHING_PROBABILITY: return "vanishing post-selection probability";
    case QKT_ERR_NON_PHYSICAL_STATE: return "non-physical state";
    case QKT_ERR_IO: return "i/o error";
    case QKT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

QKT_API qkt_status qkt_branches_create(int j, double theta, double phi, double kappa1,
                                       double kappa2, double alpha, int n_kicks,
                                       qkt_branches** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const qkt::SpinDimension d(j);
    const auto psi0 = qkt::spin_coherent_state(d, theta, phi);
    *out = new qkt_branches{qkt::controlled_evolution(psi0, d, kappa1, kappa2, alpha, n_kicks)};
  });
}

QKT_API void qkt_branches_destroy(qkt_branches* branches) { delete branches; }

QKT_API int qkt_branches_kicks(const qkt_branches* branches) {
  return branches ? branches->pair.kicks() : -1;
}

QKT_API qkt_status qkt_branches_post_selected(const qkt_branches* branches,
                                              const qkt_setting* setting, int n,
                                              qkt_detector detector, double bloch[3],
                                              double* trace) {
  if (!branches || !setting || !bloch || !trace) return null_argument("argument");
  return guarded([&] {
    const auto s = to_setting(*setting);
    const auto which = detector == QKT_DETECTOR_D2 ? qkt::Detector::d2 : qkt::Detector::d1;
    const auto ps = qkt::post_selected_state(branches->pair, s.bs1, s.bs2, n, which);
    to_bloch(ps, branches->pair.dimension(), bloch);
    *trace = ps.trace;
  });
}

QKT_API qkt_status qkt_branches_classical_mixture(const qkt_branches* branches,
                                                  const qkt_setting* setting, int n,
                                                  double bloch[3]) {
  if (!branches || !setting || !bloch) return null_argument("argument");
  return guarded([&] {
    const auto cl = qkt::classical_mixture(branches->pair, to_setting(*setting).bs1, n);
    to_bloch(cl, branches->pair.dimension(), bloch);
  });
}

QKT_API qkt_status qkt_branches_delta_s(const qkt_branches* branches, const qkt_setting* setting,
                                        int n, qkt_entropy_base base, qkt_entropy_record* out) {
  if (!branches || !setting || !out) return null_argument("argument");
  return guarded([&] {
    const auto r = qkt::delta_s(branches->pair, to_setting(*setting), n, to_base(base));
    *out = {r.n, r.s_cl, r.s_ps, r.delta_s, r.p1};
  });
}

QKT_API qkt_status qkt_branches_time_average(const qkt_branches* branches,
                                             const qkt_setting* setting, qkt_entropy_base base,
                                             qkt_time_average* out) {
  if (!branches || !setting || !out) return null_argument("argument");
  return guarded([&] {
    const auto a = qkt::time_averaged_delta_s(branches->pair, to_setting(*setting), to_base(base));
    *out = {a.value, a.mean_p1, a.samples, a.excluded};
  });
}

QKT_API qkt_status qkt_classical_step(const double xyz[3], double kappa, double out[3]) {
  if (!xyz || !out) return null_argument("argument");
  const auto p = qkt::classical_step({xyz[0], xyz[1], xyz[2]}, kappa);
  out[0] = p.x;
  out[1] = p.y;
  out[2] = p.z;
  return QKT_OK;
}

QKT_API qkt_status qkt_scenarios_from_file(const char* path, qkt_scenarios** out) {
  if (!path) return null_argument("path");
  return make_scenarios(out, [&] { return qkt::load_scenarios(path); });
}

QKT_API qkt_status qkt_scenarios_from_json(const char* json_text, qkt_scenarios** out) {
  if (!json_text) return null_argument("json_text");
  return make_scenarios(out, [&] { return qkt::parse_scenarios(json_text); });
}

QKT_API qkt_status qkt_scenarios_from_preset(const char* name, qkt_scenarios** out) {
  if (!name) return null_argument("name");
  return make_scenarios(out, [&] { return qkt::load_preset(name); });
}

QKT_API void qkt_scenarios_destroy(qkt_scenarios* scenarios) { delete scenarios; }

QKT_API size_t qkt_scenarios_count(const qkt_scenarios* scenarios) {
  return scenarios ? scenarios->configs.size() : 0;
}

QKT_API const char* qkt_scenarios_name(const qkt_scenarios* scenarios, size_t index) {
  if (!scenarios || index >= scenarios->configs.size()) return nullptr;
  return scenarios->configs[index].name.c_str();
}

QKT_API const char* qkt_scenarios_kind(const qkt_scenarios* scenarios, size_t index) {
  if (!scenarios || index >= scenarios->kinds.size()) return nullptr;
  return scenarios->kinds[index].c_str();
}

QKT_API const char* qkt_scenarios_json(const qkt_scenarios* scenarios, size_t index) {
  if (!scenarios || index >= scenarios->dumps.size()) return nullptr;
  return scenarios->dumps[index].c_str();
}

QKT_API qkt_status qkt_scenarios_set_kicks(qkt_scenarios* scenarios, int n_kicks) {
  if (!scenarios) return null_argument("scenarios");
  return guarded([&] {
    auto updated = scenarios->configs;
    for (std::size_t i = 0; i < updated.size(); ++i) {
      updated[i].n_kicks = n_kicks;
      qkt::validate(updated[i], "scenarios[" + std::to_string(i) + "]");
    }
    scenarios->configs = std::move(updated);
    scenarios->refresh();
  });
}

QKT_API size_t qkt_preset_count(void) { return qkt::preset_names().size(); }

QKT_API const char* qkt_preset_name(size_t index) {
  static const std::vector<std::string> names = qkt::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

QKT_API const char* qkt_preset_json(const char* name) {
  if (!name) return nullptr;
  thread_local std::string text;
  try {
    text = qkt::preset_json(name);
  } catch (const qkt::Error& e) {
    last_error = e.what();
    return nullptr;
  }
  return text.c_str();
}

QKT_API qkt_status qkt_run(const qkt_scenarios* scenarios, size_t index, int workers,
                           qkt_result** out) {
  if (!scenarios || !out) return null_argument("argument");
  *out = nullptr;
  if (index >= scenarios->configs.size()) {
    return fail(QKT_ERR_INVALID_ARGUMENT, "scenario index out of range");
  }
  return guarded([&] {
    qkt::RunOptions options;
    options.workers = workers;
    *out = new qkt_result{qkt::run_scenario(scenarios->configs[index], options)};
  });
}

QKT_API void qkt_result_destroy(qkt_result* result) { delete result; }

QKT_API size_t qkt_result_rows(const qkt_result* result) {
  return result ? result->result.table.rows.size() : 0;
}

QKT_API size_t qkt_result_columns(const qkt_result* result) {
  return result ? result->result.table.columns.size() : 0;
}

QKT_API const char* qkt_result_column_name(const qkt_result* result, size_t column) {
  if (!result || column >= result->result.table.columns.size()) return nullptr;
  return result->result.table.columns[column].c_str();
}

QKT_API double qkt_result_value(const qkt_result* result, size_t row, size_t column) {
  if (!result || row >= result->result.table.rows.size() ||
      column >= result->result.table.columns.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return result->result.table.rows[row][column];
}

QKT_API double qkt_result_wall_seconds(const qkt_result* result) {
  return result ? result->result.metadata.wall_seconds : 0.0;
}

QKT_API size_t qkt_result_flagged_rows(const qkt_result* result) {
  return result ? result->result.metadata.flagged_rows : 0;
}

QKT_API qkt_status qkt_result_write(const qkt_result* result, const char* out_dir,
                                    qkt_format format, char* path_buf, size_t path_len) {
  if (!result || !out_dir) return null_argument("argument");
  return guarded([&] {
    const auto fmt = format == QKT_FORMAT_JSON ? qkt::OutputFormat::json : qkt::OutputFormat::csv;
    const auto paths = qkt::emit(result->result, out_dir, fmt);
    if (path_buf && path_len > 0) {
      const auto first = paths.front().string();
      std::strncpy(path_buf, first.c_str(), path_len - 1);
      path_buf[path_len - 1] = '\0';
    }
  });
}

}  // extern "C"
