#include "qkt/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qkt {

using nlohmann::json;

namespace {

constexpr double kSigmaSlack = 1e-12;

struct KindName {
  ScenarioKind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {ScenarioKind::sigma_sweep, "sigma_sweep"},
    {ScenarioKind::kappa_diff_sweep, "kappa_diff_sweep"},
    {ScenarioKind::sigma_kappa_heatmap, "sigma_kappa_heatmap"},
    {ScenarioKind::phi_scan, "phi_scan"},
    {ScenarioKind::sigma1_sigma2_contour, "sigma1_sigma2_contour"},
    {ScenarioKind::classical_map, "classical_map"},
    {ScenarioKind::supplementary, "supplementary"},
};

std::string join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "." + field;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path, "must be finite");
  return x;
}

int integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
  return v.get<int>();
}

double unit_scale(const json& obj, const std::string& path) {
  if (!obj.contains("unit")) return 1.0;
  const auto& u = obj["unit"];
  if (u == "pi") return pi;
  if (u == "rad") return 1.0;
  throw ValidationError(join(path, "unit"), "expected \"pi\" or \"rad\"");
}

std::vector<double> grid_at(const json& v, const std::string& path) {
  if (v.is_number()) return {number_at(v, path)};
  if (v.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(number_at(v[i], path + "[" + std::to_string(i) + "]"));
    }
    if (out.empty()) throw ValidationError(path, "grid must not be empty");
    return out;
  }
  if (!v.is_object()) throw ValidationError(path, "expected a number, list or grid object");
  for (const auto& [key, _] : v.items()) {
    static const std::set<std::string> allowed{"start", "stop", "count", "values", "unit"};
    if (!allowed.count(key)) throw ValidationError(join(path, key), "unknown grid field");
  }
  const double scale = unit_scale(v, path);
  std::vector<double> out;
  if (v.contains("values")) {
    out = grid_at(v["values"], join(path, "values"));
  } else {
    for (const char* key : {"start", "stop", "count"}) {
      if (!v.contains(key)) throw ValidationError(join(path, key), "missing");
    }
    const double start = number_at(v["start"], join(path, "start"));
    const double stop = number_at(v["stop"], join(path, "stop"));
    const int count = integer_at(v["count"], join(path, "count"));
    if (count < 1) throw ValidationError(join(path, "count"), "must be >= 1");
    out.resize(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      out[static_cast<std::size_t>(k)] =
          count == 1 ? start : start + (stop - start) * k / static_cast<double>(count - 1);
    }
  }
  for (auto& x : out) x *= scale;
  return out;
}

std::vector<KappaPair> kappa_pairs_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ValidationError(path, "expected a non-empty list");
  std::vector<KappaPair> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) throw ValidationError(p, "expected [kappa1, kappa2]");
    out.push_back({number_at(v[i][0], p + "[0]"), number_at(v[i][1], p + "[1]")});
  }
  return out;
}

ScenarioConfig parse_one(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "expected an object");
  static const std::set<std::string> allowed{
      "name",        "kind",         "j",        "alpha",    "theta",          "phi",
      "kappa_pairs", "kappa1",       "kappa_diff", "kappa_diff_sign", "kappa", "sigma",
      "sigma_curves", "sigma1",      "sigma2",   "phi1",     "phi2",           "n_kicks",
      "entropy_base", "record_traces", "output"};
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError(join(path, key), "unknown field");
  }
  ScenarioConfig c;
  if (!obj.contains("name") || !obj["name"].is_string() || obj["name"].get<std::string>().empty()) {
    throw ValidationError(join(path, "name"), "expected a non-empty string");
  }
  c.name = obj["name"].get<std::string>();
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    throw ValidationError(join(path, "kind"), "expected a string");
  }
  try {
    c.kind = scenario_kind_from_string(obj["kind"].get<std::string>());
  } catch (const Error&) {
    throw ValidationError(join(path, "kind"),
                          "unknown scenario kind \"" + obj["kind"].get<std::string>() + "\"");
  }
  if (obj.contains("j")) {
    const double j = number_at(obj["j"], join(path, "j"));
    try {
      c.j = SpinDimension::from_real(j).j();
    } catch (const Error& e) {
      throw ValidationError(join(path, "j"), e.what());
    }
  }
  auto opt_number = [&](const char* key, double& out) {
    if (obj.contains(key)) out = number_at(obj[key], join(path, key));
  };
  auto opt_grid = [&](const char* key, std::vector<double>& out) {
    if (obj.contains(key)) out = grid_at(obj[key], join(path, key));
  };
  if (obj.contains("alpha")) {
    const auto& a = obj["alpha"];
    c.alpha = a.is_object() ? grid_at(a, join(path, "alpha")).at(0)
                            : number_at(a, join(path, "alpha"));
  }
  opt_grid("theta", c.theta);
  opt_grid("phi", c.phi);
  if (obj.contains("kappa_pairs")) c.kappa_pairs = kappa_pairs_at(obj["kappa_pairs"], join(path, "kappa_pairs"));
  opt_number("kappa1", c.kappa1);
  opt_grid("kappa_diff", c.kappa_diff);
  if (obj.contains("kappa_diff_sign")) {
    c.kappa_diff_sign = integer_at(obj["kappa_diff_sign"], join(path, "kappa_diff_sign"));
    if (c.kappa_diff_sign != 1 && c.kappa_diff_sign != -1) {
      throw ValidationError(join(path, "kappa_diff_sign"), "must be +1 or -1");
    }
  }
  opt_number("kappa", c.kappa);
  opt_grid("sigma", c.sigma);
  opt_grid("sigma_curves", c.sigma_curves);
  opt_grid("sigma1", c.sigma1);
  opt_grid("sigma2", c.sigma2);
  opt_number("phi1", c.phi1);
  opt_number("phi2", c.phi2);
  if (obj.contains("n_kicks")) c.n_kicks = integer_at(obj["n_kicks"], join(path, "n_kicks"));
  if (obj.contains("entropy_base")) {
    const auto& b = obj["entropy_base"];
    if (b == "bits") {
      c.entropy_base = EntropyBase::bits;
    } else if (b == "nats") {
      c.entropy_base = EntropyBase::nats;
    } else {
      throw ValidationError(join(path, "entropy_base"), "expected \"bits\" or \"nats\"");
    }
  }
  if (obj.contains("record_traces")) {
    if (!obj["record_traces"].is_boolean()) {
      throw ValidationError(join(path, "record_traces"), "expected a boolean");
    }
    c.record_traces = obj["record_traces"].get<bool>();
  }
  if (obj.contains("output")) {
    if (!obj["output"].is_string()) throw ValidationError(join(path, "output"), "expected a string");
    c.output = obj["output"].get<std::string>();
  }
  if (c.output.empty()) c.output = c.name;
  return c;
}

void require(bool present, const std::string& path, const char* field) {
  if (!present) throw ValidationError(join(path, field), "required for this scenario kind");
}

void check_sigma(const std::vector<double>& grid, const std::string& path, const char* field) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < -kSigmaSlack || grid[i] > pi + kSigmaSlack) {
      throw ValidationError(join(path, field) + "[" + std::to_string(i) + "]",
                            "beam-splitter angle must lie in [0, pi]");
    }
  }
}

std::vector<ScenarioConfig> expand(ScenarioConfig c, const std::string& path) {
  if (c.kind != ScenarioKind::supplementary) {
    validate(c, path);
    return {std::move(c)};
  }
  require(!c.kappa_pairs.empty(), path, "kappa_pairs");
  require(!c.kappa_diff.empty(), path, "kappa_diff");
  require(!c.sigma.empty(), path, "sigma");
  require(!c.sigma_curves.empty(), path, "sigma_curves");
  std::vector<ScenarioConfig> out;
  const std::pair<ScenarioKind, const char*> panels[] = {
      {ScenarioKind::sigma_sweep, "_a"},
      {ScenarioKind::kappa_diff_sweep, "_b"},
      {ScenarioKind::sigma_kappa_heatmap, "_c"}};
  for (const auto& [kind, suffix] : panels) {
    ScenarioConfig p = c;
    p.kind = kind;
    p.name = c.name + suffix;
    p.output = c.output + suffix;
    if (kind == ScenarioKind::kappa_diff_sweep) p.sigma = c.sigma_curves;
    p.sigma_curves.clear();
    if (kind != ScenarioKind::sigma_sweep) p.kappa_pairs.clear();
    if (kind == ScenarioKind::sigma_sweep) p.kappa_diff.clear();
    validate(p, path);
    out.push_back(std::move(p));
  }
  return out;
}

json grid_json(const std::vector<double>& g) { return json(g); }

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  throw Error(ErrorCode::invalid_argument, "unknown scenario kind: " + std::string(name));
}

std::size_t ScenarioConfig::cell_count() const {
  const std::size_t states = theta.size() * phi.size();
  switch (kind) {
    case ScenarioKind::sigma_sweep: return states * kappa_pairs.size() * sigma.size();
    case ScenarioKind::kappa_diff_sweep:
    case ScenarioKind::sigma_kappa_heatmap: return states * kappa_diff.size() * sigma.size();
    case ScenarioKind::phi_scan: return states * kappa_pairs.size() * sigma.size();
    case ScenarioKind::sigma1_sigma2_contour:
      return states * kappa_pairs.size() * sigma1.size() * sigma2.size();
    case ScenarioKind::classical_map: return states;
    case ScenarioKind::supplementary: return 0;
  }
  return 0;
}

void validate(const ScenarioConfig& c, const std::string& path) {
  if (c.name.empty()) throw ValidationError(join(path, "name"), "must not be empty");
  if (c.j < 1) throw ValidationError(join(path, "j"), "must be an integer >= 1");
  if (c.n_kicks < 1) throw ValidationError(join(path, "n_kicks"), "must be >= 1");
  if (!std::isfinite(c.alpha)) throw ValidationError(join(path, "alpha"), "must be finite");
  require(!c.theta.empty(), path, "theta");
  require(!c.phi.empty(), path, "phi");
  switch (c.kind) {
    case ScenarioKind::sigma_sweep:
    case ScenarioKind::phi_scan:
      require(!c.kappa_pairs.empty(), path, "kappa_pairs");
      require(!c.sigma.empty(), path, "sigma");
      check_sigma(c.sigma, path, "sigma");
      break;
    case ScenarioKind::kappa_diff_sweep:
    case ScenarioKind::sigma_kappa_heatmap:
      require(!c.kappa_diff.empty(), path, "kappa_diff");
      require(!c.sigma.empty(), path, "sigma");
      check_sigma(c.sigma, path, "sigma");
      break;
    case ScenarioKind::sigma1_sigma2_contour:
      require(!c.kappa_pairs.empty(), path, "kappa_pairs");
      require(!c.sigma1.empty(), path, "sigma1");
      require(!c.sigma2.empty(), path, "sigma2");
      check_sigma(c.sigma1, path, "sigma1");
      check_sigma(c.sigma2, path, "sigma2");
      break;
    case ScenarioKind::classical_map:
      if (c.alpha != pi / 2.0) {
        throw ValidationError(join(path, "alpha"), "the classical map is defined for alpha = pi/2");
      }
      break;
    case ScenarioKind::supplementary:
      throw ValidationError(join(path, "kind"), "supplementary scenarios must be expanded first");
  }
}

std::vector<ScenarioConfig> parse_scenarios(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("<root>", std::string("malformed JSON: ") + e.what());
  }
  std::vector<ScenarioConfig> out;
  if (doc.is_object() && doc.contains("scenarios")) {
    if (doc.size() != 1) throw ValidationError("<root>", "only \"scenarios\" allowed beside a list");
    const auto& list = doc["scenarios"];
    if (!list.is_array() || list.empty()) {
      throw ValidationError("scenarios", "expected a non-empty list");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto path = "scenarios[" + std::to_string(i) + "]";
      for (auto& c : expand(parse_one(list[i], path), path)) out.push_back(std::move(c));
    }
  } else {
    out = expand(parse_one(doc, ""), "");
  }
  std::set<std::string> stems;
  for (const auto& c : out) {
    if (!stems.insert(c.output).second) {
      throw ValidationError("output", "duplicate output name \"" + c.output + "\"");
    }
  }
  return out;
}

std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str());
}

std::string to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["kind"] = std::string(to_string(c.kind));
  j["j"] = c.j;
  j["alpha"] = c.alpha;
  j["theta"] = grid_json(c.theta);
  j["phi"] = grid_json(c.phi);
  j["n_kicks"] = c.n_kicks;
  j["phi1"] = c.phi1;
  j["phi2"] = c.phi2;
  j["entropy_base"] = c.entropy_base == EntropyBase::bits ? "bits" : "nats";
  j["record_traces"] = c.record_traces;
  j["output"] = c.output;
  if (!c.kappa_pairs.empty()) {
    json pairs = json::array();
    for (const auto& p : c.kappa_pairs) pairs.push_back({p.kappa1, p.kappa2});
    j["kappa_pairs"] = pairs;
  }
  if (!c.kappa_diff.empty()) {
    j["kappa1"] = c.kappa1;
    j["kappa_diff"] = grid_json(c.kappa_diff);
    j["kappa_diff_sign"] = c.kappa_diff_sign;
  }
  if (c.kind == ScenarioKind::classical_map) j["kappa"] = c.kappa;
  if (!c.sigma.empty()) j["sigma"] = grid_json(c.sigma);
  if (!c.sigma_curves.empty()) j["sigma_curves"] = grid_json(c.sigma_curves);
  if (!c.sigma1.empty()) j["sigma1"] = grid_json(c.sigma1);
  if (!c.sigma2.empty()) j["sigma2"] = grid_json(c.sigma2);
  return j.dump();
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char ch : to_json(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ScenarioConfig> load_preset(std::string_view name) {
  return parse_scenarios(preset_json(name));
}

}  // namespace qkt
