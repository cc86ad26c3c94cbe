#pragma once

#include <vector>

namespace qkt {

/// Point (X, Y, Z) = J/j on the unit sphere in the classical limit.
struct ClassicalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
  double theta() const;  ///< arccos Z
  double phi() const;    ///< atan2(Y, X)

  static ClassicalPoint from_angles(double theta, double phi);
};

/// One kick of the classical top at alpha = pi/2, tau = 1:
///   X' = Z cos(k X) + Y sin(k X)
///   Y' = Y cos(k X) - Z sin(k X)
///   Z' = -X
ClassicalPoint classical_step(const ClassicalPoint& p, double kappa);

struct Trajectory {
  double theta0 = 0.0;
  double phi0 = 0.0;
  std::vector<ClassicalPoint> points;  ///< kick 0..n, kick 0 is the start
};

struct StroboscopicMap {
  double kappa = 0.0;
  std::vector<Trajectory> trajectories;
  /// Largest | ||p|| - 1 | observed before the periodic projection back onto
  /// the sphere (every kRenormalizeEvery kicks).
  double max_norm_drift = 0.0;
};

inline constexpr int kRenormalizeEvery = 50;

struct InitialAngles {
  double theta;
  double phi;
};

/// Iterates every start point for `n_kicks` kicks. Trajectories are
/// independent; `workers` > 1 spreads them over threads without changing
/// the output.
StroboscopicMap stroboscopic_map(const std::vector<InitialAngles>& grid, double kappa,
                                 int n_kicks, int workers = 1);

}  // namespace qkt
