#include <map>
#include <string>

#include "qkt/scenario.hpp"

namespace qkt {

namespace {

// Shared fragments. Angles carry "unit": "pi" so the files read like the
// figure axes.
#define QKT_SIGMA31 R"({"start": 0, "stop": 1, "count": 31, "unit": "pi"})"
#define QKT_KDIFF20 R"({"start": 0.1, "stop": 9.5, "count": 20})"
#define QKT_CURVES R"({"values": [0.16666666666666667, 0.33333333333333333, 0.5, 0.66666666666666667, 0.83333333333333333], "unit": "pi"})"
#define QKT_PHI21 R"({"start": -1, "stop": 1, "count": 21, "unit": "pi"})"
#define QKT_PHI_CURVES R"({"values": [0.16666666666666667, 0.33333333333333333, 0.46666666666666667, 0.53333333333333333, 0.66666666666666667, 0.83333333333333333], "unit": "pi"})"

std::string classical(const char* name, const char* kappa) {
  return std::string(R"({"name": ")") + name + R"(", "kind": "classical_map", "kappa": )" + kappa +
         R"(, "theta": {"start": 0, "stop": 1, "count": 17, "unit": "pi"},)"
         R"( "phi": {"start": -1, "stop": 1, "count": 17, "unit": "pi"}, "n_kicks": 200})";
}

std::string three_panel(const std::string& stem, const char* phi, const char* pairs,
                        const char* kappa1, int sign) {
  const std::string state = R"("j": 25, "theta": 2.25, "phi": )" + std::string(phi) +
                            R"(, "n_kicks": 200)";
  const std::string diff = R"("kappa1": )" + std::string(kappa1) +
                           R"(, "kappa_diff": )" QKT_KDIFF20 R"(, "kappa_diff_sign": )" +
                           std::to_string(sign);
  return R"({"scenarios": [)"
         R"({"name": ")" + stem + R"(a", "kind": "sigma_sweep", )" + state +
         R"(, "kappa_pairs": )" + pairs + R"(, "sigma": )" QKT_SIGMA31 "},"
         R"({"name": ")" + stem + R"(b", "kind": "kappa_diff_sweep", )" + state + ", " + diff +
         R"(, "sigma": )" QKT_CURVES "},"
         R"({"name": ")" + stem + R"(c", "kind": "sigma_kappa_heatmap", )" + state + ", " + diff +
         R"(, "sigma": )" QKT_SIGMA31 "}]}";
}

std::string phi_scan(const char* name, int j, const char* pairs) {
  return std::string(R"({"name": ")") + name + R"(", "kind": "phi_scan", "j": )" +
         std::to_string(j) + R"(, "theta": 2.25, "phi": )" QKT_PHI21 R"(, "kappa_pairs": )" +
         pairs + R"(, "sigma": )" QKT_PHI_CURVES R"(, "n_kicks": 200})";
}

std::string contour(const char* name, const char* kappa2) {
  return std::string(R"({"name": ")") + name +
         R"(", "kind": "sigma1_sigma2_contour", "j": 25, "theta": 2.25, "phi": 1.1,)"
         R"( "kappa_pairs": [[0.5, )" + kappa2 + R"(]], "sigma1": )" QKT_SIGMA31
         R"(, "sigma2": )" QKT_SIGMA31 R"(, "n_kicks": 200})";
}

const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> t;
    t["fig1"] = R"({"scenarios": [)" + classical("fig1a", "0.5") + "," +
                classical("fig1b", "1.0") + "," + classical("fig1c", "3.0") + "," +
                classical("fig1d", "6.0") + "]}";
    t["fig3"] = three_panel("fig3", "1.1", "[[0.5, 1], [0.5, 2], [0.5, 3], [0.5, 4], [0.5, 5]]",
                            "0.5", 1);
    t["fig4"] = three_panel("fig4", "1.1",
                            "[[10, 7.5], [10, 6], [10, 4.5], [10, 3], [10, 1.5]]", "10", -1);
    t["fig5a"] = phi_scan("fig5a", 25, "[[0.5, 1]]");
    t["fig5b"] = phi_scan("fig5b", 25, "[[0.5, 3]]");
    t["fig5c"] = phi_scan("fig5c", 25, "[[0.5, 6]]");
    t["fig6a"] = contour("fig6a", "1");
    t["fig6b"] = contour("fig6b", "3");
    t["fig6c"] = contour("fig6c", "6");
    t["figS1"] =
        R"({"name": "figS1", "kind": "supplementary", "j": 25, "theta": 2.25, "phi": -1.6,)"
        R"( "kappa_pairs": [[0.5, 1], [0.5, 2], [0.5, 3], [0.5, 4], [0.5, 5]],)"
        R"( "kappa1": 0.5, "kappa_diff": )" QKT_KDIFF20 R"(, "sigma": )" QKT_SIGMA31
        R"(, "sigma_curves": )" QKT_CURVES R"(, "n_kicks": 200})";
    t["figS2"] = phi_scan("figS2", 200, "[[0.5, 1], [0.5, 3], [0.5, 6]]");
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

std::string preset_json(std::string_view name) {
  const auto& t = presets();
  const auto it = t.find(name);
  if (it == t.end()) {
    throw ValidationError("preset", "unknown preset \"" + std::string(name) + "\"");
  }
  return it->second;
}

}  // namespace qkt
