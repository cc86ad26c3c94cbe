#include "qkt/interferometer.hpp"

#include <cmath>
#include <string>

namespace qkt {

namespace {

// rho = w11 rho^{11} + w22 rho^{22} + g rho^{12} + conj(g) rho^{21}
struct BlockWeights {
  double w11;
  double w22;
  cplx g;
};

struct Assembled {
  Expectations unnormalized;
  double trace;
};

Assembled assemble(const BranchMoments& m, const BlockWeights& w) {
  Assembled out;
  out.trace = w.w11 * m.norm11 + w.w22 * m.norm22 + 2.0 * (w.g * m.overlap21).real();
  std::array<double, 3> j{};
  for (int a = 0; a < 3; ++a) {
    j[a] = w.w11 * m.j11[a] + w.w22 * m.j22[a] + 2.0 * (w.g * m.j21[a]).real();
  }
  out.unnormalized = {j[0], j[1], j[2]};
  return out;
}

ConditionalState normalize_post_selected(const Assembled& a, int n) {
  if (!(a.trace >= kVanishingTrace)) {
    throw VanishingProbabilityError(
        "post-selection probability " + std::to_string(a.trace) + " vanishes at kick " +
            std::to_string(n),
        n);
  }
  const auto& e = a.unnormalized;
  return {{e.jx / a.trace, e.jy / a.trace, e.jz / a.trace}, a.trace, Provenance::post_selected};
}

// Jx, Jy and Jz only couple neighbouring m in the Dicke basis.
CVector apply_tridiagonal(const CMatrix& op, const CVector& v) {
  const Eigen::Index n = v.size();
  CVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    cplx acc = op(k, k) * v(k);
    if (k > 0) acc += op(k, k - 1) * v(k - 1);
    if (k + 1 < n) acc += op(k, k + 1) * v(k + 1);
    out(k) = acc;
  }
  return out;
}

void check_kick(const BranchPair& b, int n) {
  if (n < 0 || n > b.kicks()) {
    throw Error(ErrorCode::invalid_argument, "kick " + std::to_string(n) +
                                                 " outside branch range 0.." +
                                                 std::to_string(b.kicks()));
  }
}

}  // namespace

double BeamSplitter::cos_half() const { return std::cos(0.5 * sigma); }
double BeamSplitter::sin_half() const { return std::sin(0.5 * sigma); }

Eigen::Matrix2cd BeamSplitter::matrix() const {
  const double c = cos_half();
  const double s = sin_half();
  Eigen::Matrix2cd m;
  m << c, std::exp(-I * phi) * s, std::exp(I * phi) * s, -c;
  return m;
}

Eigen::Vector2cd BeamSplitter::output(int port) const {
  if (port != 1 && port != 2) throw Error(ErrorCode::invalid_argument, "port must be 1 or 2");
  return matrix().col(port - 1);
}

BranchMoments branch_moments(const SpinState& psi1, const SpinState& psi2,
                             const AngularMomentum& ops) {
  const auto& v1 = psi1.amplitudes();
  const auto& v2 = psi2.amplitudes();
  BranchMoments m;
  m.norm11 = v1.squaredNorm();
  m.norm22 = v2.squaredNorm();
  m.overlap21 = v2.dot(v1);
  for (int a = 0; a < 3; ++a) {
    const CMatrix& op = ops.component(a).matrix();
    const CVector jv1 = apply_tridiagonal(op, v1);
    m.j11[a] = v1.dot(jv1).real();
    m.j22[a] = v2.dot(apply_tridiagonal(op, v2)).real();
    m.j21[a] = v2.dot(jv1);
  }
  return m;
}

BranchPair::BranchPair(std::shared_ptr<const Propagation> branch1,
                       std::shared_ptr<const Propagation> branch2, double kappa1, double kappa2,
                       SpinDimension dimension)
    : branch1_(std::move(branch1)),
      branch2_(std::move(branch2)),
      kappa1_(kappa1),
      kappa2_(kappa2),
      dimension_(dimension) {
  if (!branch1_ || !branch2_ || branch1_->states.empty() ||
      branch1_->states.size() != branch2_->states.size()) {
    throw Error(ErrorCode::invalid_argument, "branches must be non-empty and of equal length");
  }
  if ((branch1_->states.front().amplitudes() - branch2_->states.front().amplitudes())
          .cwiseAbs()
          .maxCoeff() != 0.0) {
    throw Error(ErrorCode::invalid_argument, "branches must share their initial state");
  }
  const auto ops = angular_momentum(dimension_);
  moments_.reserve(branch1_->states.size());
  for (std::size_t n = 0; n < branch1_->states.size(); ++n) {
    moments_.push_back(branch_moments(branch1_->states[n], branch2_->states[n], *ops));
  }
}

const BranchMoments& BranchPair::moments(int n) const {
  check_kick(*this, n);
  return moments_[static_cast<std::size_t>(n)];
}

double BranchPair::max_norm_drift() const {
  return std::max(branch1_->max_norm_drift, branch2_->max_norm_drift);
}

BranchPair controlled_evolution(const SpinState& psi0, SpinDimension dimension, double kappa1,
                                double kappa2, double alpha, int n) {
  auto run = [&](double kappa) {
    const FloquetUnitary u({dimension, kappa, alpha});
    return std::make_shared<const Propagation>(propagate(psi0, u, n));
  };
  auto b1 = run(kappa1);
  auto b2 = kappa1 == kappa2 ? b1 : run(kappa2);
  return BranchPair(std::move(b1), std::move(b2), kappa1, kappa2, dimension);
}

ConditionalState post_selected_state(const BranchMoments& moments, const BeamSplitter& bs1,
                                     const BeamSplitter& bs2, int n, Detector detector) {
  // Ancilla amplitudes after BS1 acting on |1>, projected on <D|.
  const Eigen::Vector2cd a = bs1.output(1);
  const Eigen::Vector2cd d = bs2.output(detector == Detector::d1 ? 1 : 2);
  const cplx b1 = std::conj(d(0)) * a(0);
  const cplx b2 = std::conj(d(1)) * a(1);
  const BlockWeights w{std::norm(b1), std::norm(b2), b1 * std::conj(b2)};
  return normalize_post_selected(assemble(moments, w), n);
}

ConditionalState post_selected_state(const BranchPair& branches, const BeamSplitter& bs1,
                                     const BeamSplitter& bs2, int n, Detector detector) {
  return post_selected_state(branches.moments(n), bs1, bs2, n, detector);
}

ConditionalState classical_mixture(const BranchMoments& moments, const BeamSplitter& bs1) {
  const double c2 = bs1.cos_half() * bs1.cos_half();
  const double s2 = bs1.sin_half() * bs1.sin_half();
  const Assembled a = assemble(moments, {c2, s2, cplx(0.0, 0.0)});
  // Branches are normalized, so the trace is c^2 + s^2 = 1 up to rounding.
  const auto& e = a.unnormalized;
  return {{e.jx / a.trace, e.jy / a.trace, e.jz / a.trace}, 1.0,
          Provenance::classical_mixture};
}

ConditionalState classical_mixture(const BranchPair& branches, const BeamSplitter& bs1, int n) {
  return classical_mixture(branches.moments(n), bs1);
}

ConditionalState symmetric_sigma_state(const BranchPair& branches, double sigma, int n) {
  const double c = std::cos(0.5 * sigma);
  const double s = std::sin(0.5 * sigma);
  const double sin_sigma = std::sin(sigma);
  const BlockWeights w{c * c * c * c, s * s * s * s, cplx(0.25 * sin_sigma * sin_sigma, 0.0)};
  return normalize_post_selected(assemble(branches.moments(n), w), n);
}

}  // namespace qkt
