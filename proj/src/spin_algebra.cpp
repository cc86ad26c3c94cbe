#include "qkt/spin_algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace qkt {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kBlochTol = 1e-8;

template <class T, class Build>
std::shared_ptr<const T> cached(std::mutex& mu, std::map<int, std::shared_ptr<const T>>& store,
                                SpinDimension d, Build&& build) {
  std::lock_guard lock(mu);
  auto it = store.find(d.j());
  if (it != store.end()) return it->second;
  auto made = std::make_shared<const T>(build());
  store.emplace(d.j(), made);
  return made;
}

double expect_real(const CVector& v, const CMatrix& op) { return v.dot(op * v).real(); }

}  // namespace

SpinDimension::SpinDimension(int j) : j_(j) {
  if (j < 1) {
    throw Error(ErrorCode::invalid_dimension,
                "spin size j must be an integer >= 1, got " + std::to_string(j));
  }
}

SpinDimension SpinDimension::from_real(double j) {
  if (!std::isfinite(j) || j < 1.0 || std::floor(j) != j) {
    throw Error(ErrorCode::invalid_dimension,
                "spin size j must be an integer >= 1, got " + std::to_string(j));
  }
  return SpinDimension(static_cast<int>(j));
}

SpinOperator::SpinOperator(CMatrix matrix, OperatorKind kind)
    : matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::invalid_argument, "spin operator must be square");
  }
  if (kind_ == OperatorKind::hermitian && hermiticity_defect() > kHermitianTol) {
    throw Error(ErrorCode::numerical, "operator declared hermitian violates M = M^dagger");
  }
  if (kind_ == OperatorKind::unitary && unitarity_defect() > kUnitaryTol) {
    throw Error(ErrorCode::numerical, "operator declared unitary violates M^dagger M = I");
  }
}

double SpinOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double SpinOperator::unitarity_defect() const {
  const auto n = matrix_.rows();
  return (matrix_.adjoint() * matrix_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

SpinState SpinState::highest_weight(SpinDimension d) {
  CVector v = CVector::Zero(d.dim());
  v(0) = 1.0;
  return SpinState(std::move(v));
}

double BlochVector::r() const { return std::sqrt(x * x + y * y + z * z); }

const SpinOperator& AngularMomentum::component(int axis) const {
  switch (axis) {
    case 0: return jx;
    case 1: return jy;
    case 2: return jz;
    default: throw Error(ErrorCode::invalid_argument, "axis must be 0, 1 or 2");
  }
}

AngularMomentum build_angular_momentum(SpinDimension d) {
  const int n = d.dim();
  const double j = d.j();
  CMatrix jz = CMatrix::Zero(n, n);
  CMatrix jplus = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = d.m(k);
    jz(k, k) = m;
    // <j, m+1| J+ |j, m>; index k-1 holds m+1.
    if (k > 0) jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const CMatrix jminus = jplus.adjoint();
  CMatrix jx = 0.5 * (jplus + jminus);
  CMatrix jy = (jplus - jminus) / (2.0 * I);
  return AngularMomentum{d, SpinOperator(std::move(jx), OperatorKind::hermitian),
                         SpinOperator(std::move(jy), OperatorKind::hermitian),
                         SpinOperator(std::move(jz), OperatorKind::hermitian)};
}

std::shared_ptr<const AngularMomentum> angular_momentum(SpinDimension d) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const AngularMomentum>> store;
  return cached(mu, store, d, [d] { return build_angular_momentum(d); });
}

YRotationGenerator::YRotationGenerator(const AngularMomentum& ops) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(ops.jy.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::numerical, "eigendecomposition of Jy failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

SpinOperator YRotationGenerator::rotation(double angle) const {
  CVector phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    phases(k) = std::exp(-I * angle * eigenvalues_(k));
  }
  CMatrix r = eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
  return SpinOperator(std::move(r), OperatorKind::unitary);
}

CVector YRotationGenerator::apply(double angle, const CVector& v) const {
  CVector w = eigenvectors_.adjoint() * v;
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) *= std::exp(-I * angle * eigenvalues_(k));
  return eigenvectors_ * w;
}

std::shared_ptr<const YRotationGenerator> y_rotation_generator(SpinDimension d) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const YRotationGenerator>> store;
  auto ops = angular_momentum(d);
  return cached(mu, store, d, [&ops] { return YRotationGenerator(*ops); });
}

SpinState spin_coherent_state(SpinDimension d, double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw Error(ErrorCode::invalid_argument, "coherent-state angles must be finite");
  }
  CVector v = y_rotation_generator(d)->apply(theta, SpinState::highest_weight(d).amplitudes());
  for (int k = 0; k < d.dim(); ++k) v(k) *= std::exp(-I * phi * d.m(k));
  v /= v.norm();
  return SpinState(std::move(v));
}

Expectations expectations(const SpinState& state, const AngularMomentum& ops) {
  const auto& v = state.amplitudes();
  return {expect_real(v, ops.jx.matrix()), expect_real(v, ops.jy.matrix()),
          expect_real(v, ops.jz.matrix())};
}

Expectations expectations(const CMatrix& rho, const AngularMomentum& ops) {
  return {(rho * ops.jx.matrix()).trace().real(), (rho * ops.jy.matrix()).trace().real(),
          (rho * ops.jz.matrix()).trace().real()};
}

BlochVector single_qubit_reduction(const Expectations& e, SpinDimension d) {
  const double j = d.j();
  BlochVector b{e.jx / j, e.jy / j, e.jz / j};
  if (!(b.r() <= 1.0 + kBlochTol)) {
    throw Error(ErrorCode::non_physical_state,
                "single-qubit Bloch vector has length " + std::to_string(b.r()) + " > 1");
  }
  return b;
}

Eigen::Matrix2cd qubit_density_matrix(const BlochVector& b) {
  Eigen::Matrix2cd rho;
  rho << 1.0 + b.z, cplx(b.x, -b.y), cplx(b.x, b.y), 1.0 - b.z;
  return 0.5 * rho;
}

Frame lab_frame() {
  return {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
}

Frame coherent_frame(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {Eigen::Vector3d(ct * cp, ct * sp, -st), Eigen::Vector3d(-sp, cp, 0.0),
          Eigen::Vector3d(st * cp, st * sp, ct)};
}

std::array<UncertaintyProduct, 3> uncertainty_check(const SpinState& state,
                                                    const AngularMomentum& ops,
                                                    const Frame& frame) {
  const auto& v = state.amplitudes();
  std::array<double, 3> mean{};
  std::array<double, 3> spread{};
  for (int a = 0; a < 3; ++a) {
    const CMatrix op = frame[a](0) * ops.jx.matrix() + frame[a](1) * ops.jy.matrix() +
                       frame[a](2) * ops.jz.matrix();
    const CVector opv = op * v;
    mean[a] = v.dot(opv).real();
    const double second = opv.squaredNorm();
    spread[a] = std::sqrt(std::max(0.0, second - mean[a] * mean[a]));
  }
  std::array<UncertaintyProduct, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    out[a] = {spread[a] * spread[b], 0.5 * std::abs(mean[c])};
  }
  return out;
}

}  // namespace qkt
