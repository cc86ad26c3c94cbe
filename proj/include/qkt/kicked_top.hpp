#pragma once

#include <vector>

#include "qkt/spin_algebra.hpp"

namespace qkt {

/// One period is a precession by `alpha` about y followed by a twist of
/// strength `kappa` about z. The kick period is fixed to 1.
struct KickedTopParams {
  SpinDimension dimension;
  double kappa = 0.0;
  double alpha = pi / 2.0;
};

/// U = exp(-i kappa/(2j) Jz^2) exp(-i alpha Jy). The rotation factor is kept
/// separately so a kick costs one dense product plus a diagonal scaling.
class FloquetUnitary {
 public:
  explicit FloquetUnitary(const KickedTopParams& params);

  const KickedTopParams& params() const noexcept { return params_; }
  const SpinOperator& rotation() const noexcept { return rotation_; }
  /// Diagonal of the twist, exp(-i kappa m^2 / (2j)) over the Dicke basis.
  const CVector& twist() const noexcept { return twist_; }

  /// Full matrix D R; built on demand.
  SpinOperator matrix() const;

  /// U |v>, applied as D (R v) with R as a real matrix.
  CVector apply(const CVector& v) const;

 private:
  KickedTopParams params_;
  SpinOperator rotation_;
  Eigen::MatrixXd real_rotation_;
  CVector twist_;
};

FloquetUnitary floquet_unitary(const KickedTopParams& params);

/// |psi(k)> = U^k |psi(0)> for k = 0..n by repeated matrix-vector products.
struct Propagation {
  std::vector<SpinState> states;
  /// Largest deviation of ||psi(k)|| from ||psi(0)|| seen before any
  /// renormalization; steps drifting past 1e-12 are rescaled back.
  double max_norm_drift = 0.0;
  int renormalizations = 0;
};

Propagation propagate(const SpinState& initial, const FloquetUnitary& u, int n);

}  // namespace qkt
