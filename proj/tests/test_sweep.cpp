#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qkt/sweep.hpp"

using namespace qkt;

namespace {

ScenarioConfig small_contour() {
  return parse_scenarios(R"({
    "name": "small", "kind": "sigma1_sigma2_contour", "j": 6, "theta": 2.25, "phi": 1.1,
    "kappa_pairs": [[0.5, 6]], "sigma1": {"start": 0, "stop": 1, "count": 7, "unit": "pi"},
    "sigma2": {"start": 0, "stop": 1, "count": 7, "unit": "pi"}, "n_kicks": 40})")[0];
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& leaf) {
  auto dir = std::filesystem::temp_directory_path() / ("qkt_test_" + leaf);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("contour rows follow sigma1-major order") {
  const auto r = run_scenario(small_contour());
  REQUIRE(r.table.rows.size() == 49);
  CHECK(r.table.at(0, "sigma1") == 0.0);
  CHECK(r.table.at(1, "sigma2") == doctest::Approx(pi / 6));
  CHECK(r.table.at(7, "sigma1") == doctest::Approx(pi / 6));
  CHECK(r.table.at(48, "cell") == 48.0);
  CHECK(r.table.at(0, "samples") == 41.0);
  CHECK(r.table.at(3, "kappa_diff") == 5.5);
  // sigma1 = pi, sigma2 = 0: D1 never clicks
  CHECK(r.table.at(42, "flagged") == 1.0);
  CHECK(std::isnan(r.table.at(42, "delta_s")));
  CHECK(r.metadata.flagged_rows == 2);
  CHECK(r.metadata.max_norm_drift <= 1e-10);
  CHECK(r.metadata.config_hash == config_hash(small_contour()));
}

TEST_CASE("cached, uncached, serial and parallel runs agree exactly") {
  const auto c = small_contour();
  const auto base = run_scenario(c, {1, true});
  for (RunOptions o : {RunOptions{1, false}, RunOptions{4, true}, RunOptions{3, false}}) {
    const auto r = run_scenario(c, o);
    CHECK(to_csv(r.table) == to_csv(base.table));
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const auto c = small_contour();
  CHECK(to_csv(run_scenario(c).table) == to_csv(run_scenario(c).table));
}

TEST_CASE("sweep cells agree with direct evaluation") {
  auto c = parse_scenarios(R"({
    "name": "k", "kind": "kappa_diff_sweep", "j": 5, "theta": 1.0, "phi": 0.4, "kappa1": 10,
    "kappa_diff": [1.5, 4.0], "kappa_diff_sign": -1, "sigma": [0.7, 2.0], "n_kicks": 30})")[0];
  const auto r = run_scenario(c);
  REQUIRE(r.table.rows.size() == 4);
  // order: sigma outer, kappa_diff inner
  CHECK(r.table.at(1, "kappa2") == 6.0);
  CHECK(r.table.at(2, "sigma1") == 2.0);
  const SpinDimension d(5);
  const auto pair = controlled_evolution(spin_coherent_state(d, 1.0, 0.4), d, 10.0, 6.0, pi / 2, 30);
  const auto avg = time_averaged_delta_s(pair, {{0.7, 0.0}, {0.7, 0.0}});
  CHECK(r.table.at(1, "delta_s") == avg.value);
  CHECK(r.table.at(1, "mean_p1") == avg.mean_p1);
}

TEST_CASE("traces hold one row per kick") {
  auto c = small_contour();
  c.sigma1 = {1.0};
  c.sigma2 = {1.0, 2.0};
  c.record_traces = true;
  const auto r = run_scenario(c);
  REQUIRE(r.traces);
  CHECK(r.traces->rows.size() == 2 * 41);
  CHECK(r.traces->at(41, "cell") == 1.0);
  CHECK(r.traces->at(41, "n") == 0.0);
}

TEST_CASE("classical scenario table") {
  auto c = parse_scenarios(R"({"name": "cm", "kind": "classical_map", "kappa": 3,
                              "theta": [0.5, 1.0], "phi": [0, 1], "n_kicks": 10})")[0];
  const auto r = run_scenario(c);
  CHECK(r.table.columns == std::vector<std::string>{"trajectory_id", "kick", "theta", "phi", "X", "Y", "Z"});
  CHECK(r.table.rows.size() == 4 * 11);
  CHECK(r.table.at(11, "trajectory_id") == 1.0);
  CHECK(r.table.at(11, "theta") == doctest::Approx(0.5));
  CHECK(r.table.at(11, "phi") == doctest::Approx(1.0));
}

TEST_CASE("CSV round-trips exactly") {
  const auto r = run_scenario(small_contour());
  const auto parsed = parse_csv(to_csv(r.table));
  CHECK(parsed.columns == r.table.columns);
  REQUIRE(parsed.rows.size() == r.table.rows.size());
  for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
    for (std::size_t k = 0; k < parsed.columns.size(); ++k) {
      const double a = parsed.rows[i][k], b = r.table.rows[i][k];
      CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
    }
  }
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ValidationError);
  CHECK_THROWS_AS(parse_csv("a\nfoo\n"), ValidationError);
  CHECK_THROWS_AS(parse_csv(""), ValidationError);
}

TEST_CASE("emit writes csv and json") {
  auto c = small_contour();
  c.record_traces = true;
  c.sigma1 = {1.0};
  const auto r = run_scenario(c);
  const auto dir = scratch("emit");
  const auto csv = emit(r, dir, OutputFormat::csv);
  REQUIRE(csv.size() == 2);
  CHECK(csv[0].filename() == "small.csv");
  CHECK(csv[1].filename() == "small_traces.csv");
  CHECK(slurp(csv[0]) == to_csv(r.table));
  const auto js = emit(r, dir, OutputFormat::json);
  REQUIRE(js.size() == 1);
  const auto doc = nlohmann::json::parse(slurp(js[0]));
  CHECK(doc["metadata"]["config_hash"] == r.metadata.config_hash);
  CHECK(doc["metadata"]["version"] == std::string(kVersion));
  CHECK(doc["rows"].size() == 7);
  CHECK(doc["traces"]["rows"].size() == 7 * 41);
  CHECK(doc["config"]["name"] == "small");
  std::filesystem::remove_all(dir);
}

TEST_CASE("emit reports unwritable directories") {
  const auto r = run_scenario(small_contour());
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "file";
  try {
    emit(r, blocker / "sub", OutputFormat::csv);
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  std::filesystem::remove(blocker);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("invalid configs are rejected before running") {
  auto c = small_contour();
  c.sigma1.push_back(5.0);
  CHECK_THROWS_AS(run_scenario(c), ValidationError);
}

TEST_CASE("fig3a family: positive below the threshold, negative beyond pi/2 above it") {
  const auto r = run_scenario(load_preset("fig3")[0], {2, true});
  REQUIRE(r.table.rows.size() == 155);
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double k2 = r.table.at(i, "kappa2"), s = r.table.at(i, "sigma1");
    const double v = r.table.at(i, "delta_s");
    if (s < 1e-9 || s > pi - 1e-9) {
      CHECK(std::abs(v) <= 1e-10);
      continue;
    }
    if (k2 <= 2.0) CHECK(v > 0);
    if (k2 >= 3.0 && s < pi / 2) CHECK(v > 0);
    // sigma = 0.533 pi is the first sampled point past the dip
    if (k2 >= 3.0 && std::abs(s - 16 * pi / 30) < 1e-9) CHECK(v < 0);
  }
}

TEST_CASE("degenerate single cell") {
  const auto c = parse_scenarios(R"({"name": "one", "kind": "sigma_sweep", "j": 5, "theta": 1,
                                     "phi": 0.5, "kappa_pairs": [[2, 2]], "sigma": 1.3})")[0];
  const auto r = run_scenario(c);
  REQUIRE(r.table.rows.size() == 1);
  CHECK(std::abs(r.table.at(0, "delta_s")) <= 1e-10);
}
