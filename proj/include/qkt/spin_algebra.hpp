#pragma once

#include <array>
#include <memory>

#include "qkt/error.hpp"
#include "qkt/types.hpp"

namespace qkt {

/// Spin size j of the top. Only integer j >= 1 is supported; the basis has
/// dim = 2j + 1 Dicke states ordered m = j, j-1, ..., -j, and the spin is
/// equivalent to N = 2j qubits in the symmetric subspace.
class SpinDimension {
 public:
  explicit SpinDimension(int j);

  /// Accepts a real-valued j, rejecting half-integers and anything below 1.
  static SpinDimension from_real(double j);

  int j() const noexcept { return j_; }
  int dim() const noexcept { return 2 * j_ + 1; }
  int qubits() const noexcept { return 2 * j_; }
  /// Magnetic quantum number of basis index `k`.
  double m(int k) const noexcept { return static_cast<double>(j_ - k); }

  friend bool operator==(SpinDimension, SpinDimension) = default;

 private:
  int j_;
};

enum class OperatorKind { hermitian, unitary, general };

/// Dense operator on the spin space. Construction checks the invariant of the
/// declared kind (hermitian to 1e-12, unitary to 1e-10) and throws a
/// numerical error on violation.
class SpinOperator {
 public:
  SpinOperator(CMatrix matrix, OperatorKind kind);

  const CMatrix& matrix() const noexcept { return matrix_; }
  OperatorKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// max |M - M^dagger|
  double hermiticity_defect() const;
  /// max |M^dagger M - I|
  double unitarity_defect() const;

 private:
  CMatrix matrix_;
  OperatorKind kind_;
};

/// Amplitudes in the Dicke basis, m = j first.
class SpinState {
 public:
  explicit SpinState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  /// |j, j>
  static SpinState highest_weight(SpinDimension d);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

 private:
  CVector amplitudes_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double r() const;
};

/// Jx, Jy, Jz for one spin size (hbar = 1).
struct AngularMomentum {
  SpinDimension dimension;
  SpinOperator jx;
  SpinOperator jy;
  SpinOperator jz;

  const SpinOperator& component(int axis) const;
};

AngularMomentum build_angular_momentum(SpinDimension d);

/// Shared, lazily built operators for `d`. Safe to call from several threads;
/// each dimension is constructed once under a lock and is read-only after.
std::shared_ptr<const AngularMomentum> angular_momentum(SpinDimension d);

/// Hermitian eigendecomposition Jy = V diag(w) V^dagger. Every rotation about
/// y in the library goes through this, including the Floquet precession.
class YRotationGenerator {
 public:
  explicit YRotationGenerator(const AngularMomentum& ops);

  /// exp(-i angle Jy), re-checked for unitarity after reconstruction.
  SpinOperator rotation(double angle) const;
  /// exp(-i angle Jy) v without forming the matrix.
  CVector apply(double angle, const CVector& v) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const CMatrix& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  Eigen::VectorXd eigenvalues_;
  CMatrix eigenvectors_;
};

/// Cached per dimension, same contract as angular_momentum().
std::shared_ptr<const YRotationGenerator> y_rotation_generator(SpinDimension d);

/// |theta, phi> = exp(-i phi Jz) exp(-i theta Jy) |j, j>.
SpinState spin_coherent_state(SpinDimension d, double theta, double phi);

/// <Jx>, <Jy>, <Jz> of a (possibly unnormalized) state; the input to the
/// single-qubit reduction.
struct Expectations {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;

  double operator[](int axis) const { return axis == 0 ? jx : axis == 1 ? jy : jz; }
};

Expectations expectations(const SpinState& state, const AngularMomentum& ops);
/// Tr(rho J_alpha) for a density matrix on the spin space.
Expectations expectations(const CMatrix& rho, const AngularMomentum& ops);

/// Bloch vector of one qubit after tracing out the other 2j - 1.
///
/// For a permutation-symmetric N-qubit state every qubit carries the same
/// reduced state, so <sigma_1a> = (1/N) sum_i <sigma_ia> = (2/N) <J_a>.
/// With N = 2j this is <J_a>/j, and the reduced state is
/// (I + x sx + y sy + z sz) / 2. Throws non_physical_state when the length
/// exceeds 1 + 1e-8.
BlochVector single_qubit_reduction(const Expectations& e, SpinDimension d);

/// (I + r . sigma) / 2
Eigen::Matrix2cd qubit_density_matrix(const BlochVector& b);

/// Orthonormal axes (e1, e2, e3) in which uncertainty products are taken.
using Frame = std::array<Eigen::Vector3d, 3>;

Frame lab_frame();
/// Frame whose third axis points along (theta, phi).
Frame coherent_frame(double theta, double phi);

struct UncertaintyProduct {
  double product;  ///< Delta J_a Delta J_b
  double bound;    ///< |<J_c>| / 2
};

/// Products for the cyclic pairs (1,2;3), (2,3;1), (3,1;2) of `frame`.
std::array<UncertaintyProduct, 3> uncertainty_check(const SpinState& state,
                                                    const AngularMomentum& ops,
                                                    const Frame& frame = lab_frame());

}  // namespace qkt
