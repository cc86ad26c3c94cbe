#include "qkt/classical_map.hpp"

#include <algorithm>
#include <cmath>

#include "qkt/error.hpp"
#include "parallel.hpp"

namespace qkt {

double ClassicalPoint::norm() const { return std::sqrt(x * x + y * y + z * z); }
double ClassicalPoint::theta() const { return std::acos(std::clamp(z / norm(), -1.0, 1.0)); }
double ClassicalPoint::phi() const { return std::atan2(y, x); }

ClassicalPoint ClassicalPoint::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

ClassicalPoint classical_step(const ClassicalPoint& p, double kappa) {
  const double c = std::cos(kappa * p.x);
  const double s = std::sin(kappa * p.x);
  return {p.z * c + p.y * s, p.y * c - p.z * s, -p.x};
}

namespace {

Trajectory iterate(const InitialAngles& start, double kappa, int n_kicks, double& drift) {
  Trajectory t{start.theta, start.phi, {}};
  t.points.reserve(static_cast<std::size_t>(n_kicks) + 1);
  ClassicalPoint p = ClassicalPoint::from_angles(start.theta, start.phi);
  t.points.push_back(p);
  for (int k = 1; k <= n_kicks; ++k) {
    p = classical_step(p, kappa);
    const double norm = p.norm();
    drift = std::max(drift, std::abs(norm - 1.0));
    if (k % kRenormalizeEvery == 0) p = {p.x / norm, p.y / norm, p.z / norm};
    t.points.push_back(p);
  }
  return t;
}

}  // namespace

StroboscopicMap stroboscopic_map(const std::vector<InitialAngles>& grid, double kappa,
                                 int n_kicks, int workers) {
  if (n_kicks < 0) throw Error(ErrorCode::invalid_argument, "kick count must be >= 0");
  if (!std::isfinite(kappa)) throw Error(ErrorCode::invalid_argument, "kappa must be finite");
  StroboscopicMap map;
  map.kappa = kappa;
  map.trajectories.resize(grid.size());
  std::vector<double> drift(grid.size(), 0.0);
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    map.trajectories[i] = iterate(grid[i], kappa, n_kicks, drift[i]);
  });
  for (const double d : drift) map.max_norm_drift = std::max(map.max_norm_drift, d);
  return map;
}

}  // namespace qkt
