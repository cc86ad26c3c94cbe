#include "qkt/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "qkt/classical_map.hpp"
#include "parallel.hpp"

namespace qkt {

namespace {

struct Cell {
  double theta;
  double phi;
  double kappa1;
  double kappa2;
  double sigma1;
  double sigma2;
};

std::vector<Cell> enumerate_cells(const ScenarioConfig& c) {
  std::vector<Cell> cells;
  cells.reserve(c.cell_count());
  auto diff_kappa2 = [&](double d) { return c.kappa1 + c.kappa_diff_sign * d; };
  switch (c.kind) {
    case ScenarioKind::sigma_sweep:
      for (double th : c.theta)
        for (double ph : c.phi)
          for (const auto& k : c.kappa_pairs)
            for (double s : c.sigma) cells.push_back({th, ph, k.kappa1, k.kappa2, s, s});
      break;
    case ScenarioKind::kappa_diff_sweep:
      for (double th : c.theta)
        for (double ph : c.phi)
          for (double s : c.sigma)
            for (double d : c.kappa_diff) cells.push_back({th, ph, c.kappa1, diff_kappa2(d), s, s});
      break;
    case ScenarioKind::sigma_kappa_heatmap:
      for (double th : c.theta)
        for (double ph : c.phi)
          for (double d : c.kappa_diff)
            for (double s : c.sigma) cells.push_back({th, ph, c.kappa1, diff_kappa2(d), s, s});
      break;
    case ScenarioKind::phi_scan:
      for (const auto& k : c.kappa_pairs)
        for (double s : c.sigma)
          for (double th : c.theta)
            for (double ph : c.phi) cells.push_back({th, ph, k.kappa1, k.kappa2, s, s});
      break;
    case ScenarioKind::sigma1_sigma2_contour:
      for (double th : c.theta)
        for (double ph : c.phi)
          for (const auto& k : c.kappa_pairs)
            for (double s1 : c.sigma1)
              for (double s2 : c.sigma2) cells.push_back({th, ph, k.kappa1, k.kappa2, s1, s2});
      break;
    case ScenarioKind::classical_map:
    case ScenarioKind::supplementary:
      break;
  }
  return cells;
}

// j, alpha and the kick count are fixed for a scenario, so (theta, phi,
// kappa) completes the branch key.
using BranchKey = std::tuple<double, double, double>;
using PairKey = std::tuple<double, double, double, double>;

class BranchStore {
 public:
  BranchStore(const ScenarioConfig& c, const std::vector<Cell>& cells, int workers)
      : dim_(c.j) {
    std::vector<BranchKey> branch_keys;
    std::vector<PairKey> pair_keys;
    for (const auto& cell : cells) {
      for (double k : {cell.kappa1, cell.kappa2}) {
        if (branch_index_.emplace(BranchKey{cell.theta, cell.phi, k}, branch_keys.size()).second) {
          branch_keys.emplace_back(cell.theta, cell.phi, k);
        }
      }
      const PairKey pk{cell.theta, cell.phi, cell.kappa1, cell.kappa2};
      if (pair_index_.emplace(pk, pair_keys.size()).second) pair_keys.push_back(pk);
    }
    // Building U costs O(dim^3); share one per kappa.
    std::map<double, std::size_t> kappa_index;
    std::vector<double> kappas;
    for (const auto& key : branch_keys) {
      if (kappa_index.emplace(std::get<2>(key), kappas.size()).second) {
        kappas.push_back(std::get<2>(key));
      }
    }
    std::vector<std::optional<FloquetUnitary>> unitaries(kappas.size());
    parallel_for(kappas.size(), workers, [&](std::size_t i) {
      unitaries[i].emplace(KickedTopParams{dim_, kappas[i], c.alpha});
    });
    branches_.resize(branch_keys.size());
    parallel_for(branch_keys.size(), workers, [&](std::size_t i) {
      const auto [theta, phi, kappa] = branch_keys[i];
      const auto psi0 = spin_coherent_state(dim_, theta, phi);
      const auto& u = *unitaries[kappa_index.at(kappa)];
      branches_[i] = std::make_shared<const Propagation>(propagate(psi0, u, c.n_kicks));
    });
    pairs_.resize(pair_keys.size());
    parallel_for(pair_keys.size(), workers, [&](std::size_t i) {
      const auto [theta, phi, k1, k2] = pair_keys[i];
      pairs_[i] = std::make_unique<const BranchPair>(
          branches_[branch_index_.at({theta, phi, k1})],
          branches_[branch_index_.at({theta, phi, k2})], k1, k2, dim_);
    });
  }

  const BranchPair& pair(const Cell& cell) const {
    return *pairs_[pair_index_.at({cell.theta, cell.phi, cell.kappa1, cell.kappa2})];
  }

  double max_norm_drift() const {
    double d = 0.0;
    for (const auto& b : branches_) d = std::max(d, b->max_norm_drift);
    return d;
  }

 private:
  SpinDimension dim_;
  std::map<BranchKey, std::size_t> branch_index_;
  std::map<PairKey, std::size_t> pair_index_;
  std::vector<std::shared_ptr<const Propagation>> branches_;
  std::vector<std::unique_ptr<const BranchPair>> pairs_;
};

struct CellOutcome {
  TimeAverage average;
  std::vector<EntropyRecord> records;
  double drift = 0.0;
};

CellOutcome evaluate(const BranchPair& pair, const Cell& cell, const ScenarioConfig& c) {
  const InterferometerSetting setting{{cell.sigma1, c.phi1}, {cell.sigma2, c.phi2}};
  CellOutcome out;
  out.records = delta_s_trace(pair, setting, c.entropy_base);
  const int excluded = pair.kicks() + 1 - static_cast<int>(out.records.size());
  out.average = average_records(out.records, excluded);
  out.drift = pair.max_norm_drift();
  if (!c.record_traces) out.records.clear();
  return out;
}

SweepResult run_quantum(const ScenarioConfig& c, const RunOptions& options) {
  const auto cells = enumerate_cells(c);
  std::vector<CellOutcome> outcomes(cells.size());
  double drift = 0.0;
  if (options.cache_branches) {
    const BranchStore store(c, cells, options.workers);
    parallel_for(cells.size(), options.workers, [&](std::size_t i) {
      outcomes[i] = evaluate(store.pair(cells[i]), cells[i], c);
    });
    drift = store.max_norm_drift();
  } else {
    const SpinDimension dim(c.j);
    parallel_for(cells.size(), options.workers, [&](std::size_t i) {
      const auto& cell = cells[i];
      const auto psi0 = spin_coherent_state(dim, cell.theta, cell.phi);
      const auto pair =
          controlled_evolution(psi0, dim, cell.kappa1, cell.kappa2, c.alpha, c.n_kicks);
      outcomes[i] = evaluate(pair, cell, c);
    });
    for (const auto& o : outcomes) drift = std::max(drift, o.drift);
  }

  SweepResult result;
  result.table.columns = {"cell",    "theta",   "phi",     "kappa1",  "kappa2",
                          "kappa_diff", "sigma1", "sigma2", "delta_s", "mean_p1",
                          "samples", "excluded_kicks", "flagged"};
  if (c.record_traces) result.traces = Table{{"cell", "n", "s_cl", "s_ps", "delta_s", "p1"}, {}};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    const auto& avg = outcomes[i].average;
    const bool flagged = avg.excluded > 0;
    result.metadata.flagged_rows += flagged ? 1 : 0;
    result.table.rows.push_back({static_cast<double>(i), cell.theta, cell.phi, cell.kappa1,
                                 cell.kappa2, cell.kappa2 - cell.kappa1, cell.sigma1, cell.sigma2,
                                 avg.value, avg.mean_p1, static_cast<double>(avg.samples),
                                 static_cast<double>(avg.excluded), flagged ? 1.0 : 0.0});
    if (result.traces) {
      for (const auto& r : outcomes[i].records) {
        result.traces->rows.push_back({static_cast<double>(i), static_cast<double>(r.n), r.s_cl,
                                       r.s_ps, r.delta_s, r.p1});
      }
    }
  }
  result.metadata.max_norm_drift = drift;
  return result;
}

SweepResult run_classical(const ScenarioConfig& c, const RunOptions& options) {
  std::vector<InitialAngles> grid;
  for (double th : c.theta)
    for (double ph : c.phi) grid.push_back({th, ph});
  const auto map = stroboscopic_map(grid, c.kappa, c.n_kicks, options.workers);
  SweepResult result;
  result.table.columns = {"trajectory_id", "kick", "theta", "phi", "X", "Y", "Z"};
  for (std::size_t t = 0; t < map.trajectories.size(); ++t) {
    const auto& pts = map.trajectories[t].points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& p = pts[k];
      result.table.rows.push_back({static_cast<double>(t), static_cast<double>(k), p.theta(),
                                   p.phi(), p.x, p.y, p.z});
    }
  }
  result.metadata.max_norm_drift = map.max_norm_drift;
  return result;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw Error(ErrorCode::invalid_argument, "no column named " + std::string(name));
  }
  return static_cast<std::size_t>(it - columns.begin());
}

SweepResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  SweepResult result = config.kind == ScenarioKind::classical_map ? run_classical(config, options)
                                                                   : run_quantum(config, options);
  result.config = config;
  result.metadata.scenario = config.name;
  result.metadata.kind = std::string(to_string(config.kind));
  result.metadata.config_hash = config_hash(config);
  result.metadata.version = std::string(kVersion);
  result.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qkt
