#pragma once

#include <array>
#include <memory>
#include <vector>

#include "qkt/kicked_top.hpp"
#include "qkt/spin_algebra.hpp"

namespace qkt {

/// Beam splitter acting on the ancilla (path) qubit:
///
///   [ cos(s/2)            e^{-i phi} sin(s/2) ]
///   [ e^{i phi} sin(s/2)  -cos(s/2)           ]
///
/// Transmission to reflection is sin^2(s/2) : cos^2(s/2). The matrix is
/// unitary and hermitian, hence its own inverse.
struct BeamSplitter {
  double sigma = 0.0;
  double phi = 0.0;

  double cos_half() const;
  double sin_half() const;
  Eigen::Matrix2cd matrix() const;
  /// M|1> and M|2>.
  Eigen::Vector2cd output(int port) const;
};

struct InterferometerSetting {
  BeamSplitter bs1;
  BeamSplitter bs2;
};

enum class Detector { d1, d2 };

/// Inner products between the two branches at one kick. With
/// rho^{ik} = |psi_i><psi_k| these are the traces Tr rho^{ik} and
/// Tr(J_a rho^{ik}) needed to assemble any post-selected or mixed state.
struct BranchMoments {
  double norm11 = 0.0;
  double norm22 = 0.0;
  cplx overlap21;                ///< <psi_2|psi_1> = Tr rho^{12}
  std::array<double, 3> j11{};   ///< <psi_1|J_a|psi_1>
  std::array<double, 3> j22{};   ///< <psi_2|J_a|psi_2>
  std::array<cplx, 3> j21{};     ///< <psi_2|J_a|psi_1> = Tr(J_a rho^{12})
};

BranchMoments branch_moments(const SpinState& psi1, const SpinState& psi2,
                             const AngularMomentum& ops);

/// The two pure branches U_{k1}^n |psi0> and U_{k2}^n |psi0>, n = 0..N.
///
/// The ancilla starts in |1> and the spin in a pure state, so after BS1 and
/// the controlled evolution the joint state is a pure superposition
/// a_1 |1>|psi_1(n)> + a_2 |2>|psi_2(n)>. Every block of the joint density
/// matrix is then a_i a_k^* |psi_i(n)><psi_k(n)|, and tracking the two
/// vectors replaces evolving the 2(2j+1)-dimensional density matrix.
class BranchPair {
 public:
  BranchPair(std::shared_ptr<const Propagation> branch1,
             std::shared_ptr<const Propagation> branch2, double kappa1, double kappa2,
             SpinDimension dimension);

  int kicks() const noexcept { return static_cast<int>(moments_.size()) - 1; }
  double kappa1() const noexcept { return kappa1_; }
  double kappa2() const noexcept { return kappa2_; }
  SpinDimension dimension() const noexcept { return dimension_; }

  const std::vector<SpinState>& branch1() const { return branch1_->states; }
  const std::vector<SpinState>& branch2() const { return branch2_->states; }
  const BranchMoments& moments(int n) const;
  double max_norm_drift() const;

 private:
  std::shared_ptr<const Propagation> branch1_;
  std::shared_ptr<const Propagation> branch2_;
  double kappa1_;
  double kappa2_;
  SpinDimension dimension_;
  std::vector<BranchMoments> moments_;
};

/// Propagates both branches from psi0 for n kicks.
BranchPair controlled_evolution(const SpinState& psi0, SpinDimension dimension, double kappa1,
                                double kappa2, double alpha, int n);

enum class Provenance { post_selected, classical_mixture };

/// Spin state conditioned on the interferometer outcome, reduced to what the
/// diagnostics need: normalized <J_a> and the unnormalized trace.
struct ConditionalState {
  Expectations expectations;
  double trace = 1.0;
  Provenance provenance = Provenance::classical_mixture;
};

/// Below this unnormalized trace the detector is treated as never clicking.
inline constexpr double kVanishingTrace = 1e-12;

/// State after a click in detector D1 (or D2), normalized by its trace. The
/// trace is the detection probability. Throws VanishingProbabilityError when
/// the trace is below kVanishingTrace.
ConditionalState post_selected_state(const BranchPair& branches, const BeamSplitter& bs1,
                                     const BeamSplitter& bs2, int n,
                                     Detector detector = Detector::d1);
ConditionalState post_selected_state(const BranchMoments& moments, const BeamSplitter& bs1,
                                     const BeamSplitter& bs2, int n,
                                     Detector detector = Detector::d1);

/// Interference-free mixture cos^2(s1/2) rho^{11} + sin^2(s1/2) rho^{22}.
/// BS2 does not enter.
ConditionalState classical_mixture(const BranchPair& branches, const BeamSplitter& bs1, int n);
ConditionalState classical_mixture(const BranchMoments& moments, const BeamSplitter& bs1);

/// sigma1 = sigma2 = sigma, phi1 = phi2 = 0, with weights cos^4(s/2),
/// sin^4(s/2) and sin^2(s)/4 on the interference term.
ConditionalState symmetric_sigma_state(const BranchPair& branches, double sigma, int n);

}  // namespace qkt
