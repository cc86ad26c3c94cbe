#include "qkt/kicked_top.hpp"

#include <cmath>
#include <string>

namespace qkt {

namespace {

constexpr double kRenormalizeAbove = 1e-12;

CVector twist_diagonal(const KickedTopParams& p) {
  const auto d = p.dimension;
  CVector diag(d.dim());
  for (int k = 0; k < d.dim(); ++k) {
    const double m = d.m(k);
    diag(k) = std::exp(-I * (p.kappa * m * m / (2.0 * d.j())));
  }
  return diag;
}

}  // namespace

FloquetUnitary::FloquetUnitary(const KickedTopParams& params)
    : params_(params),
      rotation_([&] {
        if (!std::isfinite(params.kappa) || !std::isfinite(params.alpha)) {
          throw Error(ErrorCode::invalid_argument, "kappa and alpha must be finite");
        }
        // -i Jy is real, so exp(-i alpha Jy) is real; drop the round-off
        // imaginary part left by the eigendecomposition.
        const auto r = y_rotation_generator(params.dimension)->rotation(params.alpha);
        return SpinOperator(r.matrix().real().cast<cplx>(), OperatorKind::unitary);
      }()),
      real_rotation_(rotation_.matrix().real()),
      twist_(twist_diagonal(params)) {}

SpinOperator FloquetUnitary::matrix() const {
  CMatrix u = twist_.asDiagonal() * rotation_.matrix();
  return SpinOperator(std::move(u), OperatorKind::unitary);
}

CVector FloquetUnitary::apply(const CVector& v) const {
  Eigen::MatrixX2d parts(v.size(), 2);
  parts.col(0) = v.real();
  parts.col(1) = v.imag();
  const Eigen::MatrixX2d rotated = real_rotation_ * parts;
  CVector out(v.size());
  out.real() = rotated.col(0);
  out.imag() = rotated.col(1);
  return out.cwiseProduct(twist_);
}

FloquetUnitary floquet_unitary(const KickedTopParams& params) { return FloquetUnitary(params); }

Propagation propagate(const SpinState& initial, const FloquetUnitary& u, int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "kick count must be >= 0");
  if (initial.dim() != u.params().dimension.dim()) {
    throw Error(ErrorCode::invalid_argument,
                "state dimension " + std::to_string(initial.dim()) +
                    " does not match unitary dimension " +
                    std::to_string(u.params().dimension.dim()));
  }
  Propagation out;
  out.states.reserve(static_cast<std::size_t>(n) + 1);
  out.states.push_back(initial);
  CVector v = initial.amplitudes();
  const double reference = v.norm();
  for (int k = 1; k <= n; ++k) {
    v = u.apply(v);
    const double norm = v.norm();
    const double drift = std::abs(norm - reference);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
    if (drift > kRenormalizeAbove) {
      v *= reference / norm;
      ++out.renormalizations;
    }
    out.states.emplace_back(v);
  }
  return out;
}

}  // namespace qkt
