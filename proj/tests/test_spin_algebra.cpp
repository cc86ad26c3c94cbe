#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qkt/spin_algebra.hpp"

using namespace qkt;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("dimension accepts integer j >= 1 only") {
  CHECK(SpinDimension(25).dim() == 51);
  CHECK(SpinDimension(25).qubits() == 50);
  CHECK(SpinDimension(3).m(0) == 3.0);
  CHECK(SpinDimension(3).m(6) == -3.0);
  CHECK_THROWS_AS(SpinDimension(0), Error);
  CHECK_THROWS_AS(SpinDimension(-2), Error);
  CHECK_THROWS_AS(SpinDimension::from_real(2.5), Error);
  CHECK_THROWS_AS(SpinDimension::from_real(0.5), Error);
  CHECK(SpinDimension::from_real(4.0).j() == 4);
  try {
    SpinDimension(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_dimension);
  }
}

TEST_CASE("operator construction enforces its declared kind") {
  CMatrix h(2, 2);
  h << 1, I, -I, 2;
  CHECK_NOTHROW(SpinOperator(h, OperatorKind::hermitian));
  CMatrix nh = h;
  nh(0, 1) += 1e-9;
  CHECK_THROWS_AS(SpinOperator(nh, OperatorKind::hermitian), Error);
  CHECK_THROWS_AS(SpinOperator(h, OperatorKind::unitary), Error);
  CHECK_THROWS_AS(SpinOperator(CMatrix::Zero(2, 3), OperatorKind::general), Error);
}

TEST_CASE("commutation relations and Casimir") {
  for (int j : {1, 2, 5, 25}) {
    const auto ops = build_angular_momentum(SpinDimension(j));
    const CMatrix& x = ops.jx.matrix();
    const CMatrix& y = ops.jy.matrix();
    const CMatrix& z = ops.jz.matrix();
    CAPTURE(j);
    CHECK(max_abs(x * y - y * x - I * z) < 1e-12);
    CHECK(max_abs(y * z - z * y - I * x) < 1e-12);
    CHECK(max_abs(z * x - x * z - I * y) < 1e-12);
    const CMatrix casimir = x * x + y * y + z * z;
    CHECK(max_abs(casimir - j * (j + 1.0) * CMatrix::Identity(2 * j + 1, 2 * j + 1)) < 1e-10);
  }
}

TEST_CASE("Jz squared trace for j = 25") {
  const auto ops = angular_momentum(SpinDimension(25));
  const CMatrix z2 = ops->jz.matrix() * ops->jz.matrix();
  CHECK(z2.trace().real() == doctest::Approx(11050.0).epsilon(1e-14));
}

TEST_CASE("operators agree with collective qubit spins") {
  for (int j : {1, 2, 3}) {
    const auto ops = build_angular_momentum(SpinDimension(j));
    for (int a = 0; a < 3; ++a) {
      CAPTURE(j);
      CAPTURE(a);
      CHECK(max_abs(ops.component(a).matrix() - oracle::collective_spin(j, a)) < 1e-12);
    }
  }
}

TEST_CASE("cached operators are shared") {
  const auto a = angular_momentum(SpinDimension(7));
  const auto b = angular_momentum(SpinDimension(7));
  CHECK(a.get() == b.get());
  CHECK(y_rotation_generator(SpinDimension(7)).get() == y_rotation_generator(SpinDimension(7)).get());
}

TEST_CASE("y rotation matches the Pade exponential") {
  const SpinDimension d(6);
  const auto ops = angular_momentum(d);
  const auto gen = y_rotation_generator(d);
  for (double angle : {0.0, 0.3, pi / 2, 2.0, -1.1}) {
    const CMatrix expected = oracle::expm(-I * angle * ops->jy.matrix());
    CHECK(max_abs(gen->rotation(angle).matrix() - expected) < 1e-11);
    const CVector v = CVector::LinSpaced(d.dim(), 1.0, 2.0);
    CHECK((gen->apply(angle, v) - expected * v).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("coherent state amplitudes match the closed form") {
  for (int j : {1, 4, 25}) {
    const SpinDimension d(j);
    for (auto [th, ph] : {std::pair{0.0, 0.0}, {2.25, 1.1}, {pi, -0.4}, {0.7, 3.0}}) {
      const auto s = spin_coherent_state(d, th, ph);
      CAPTURE(j);
      CAPTURE(th);
      CHECK((s.amplitudes() - oracle::coherent_state(j, th, ph)).cwiseAbs().maxCoeff() < 1e-11);
      CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  const auto hw = SpinState::highest_weight(SpinDimension(3));
  CHECK(hw.amplitudes()(0) == cplx(1.0));
  CHECK(hw.amplitudes().norm() == 1.0);
}

TEST_CASE("coherent state points along (theta, phi)") {
  const SpinDimension d(25);
  const auto ops = angular_momentum(d);
  const double th = 2.25, ph = 1.1;
  const auto e = expectations(spin_coherent_state(d, th, ph), *ops);
  const auto b = single_qubit_reduction(e, d);
  CHECK(b.x == doctest::Approx(std::sin(th) * std::cos(ph)).epsilon(1e-12));
  CHECK(b.y == doctest::Approx(std::sin(th) * std::sin(ph)).epsilon(1e-12));
  CHECK(b.z == doctest::Approx(std::cos(th)).epsilon(1e-12));
  CHECK(b.r() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("density matrix and state expectations agree") {
  const SpinDimension d(4);
  const auto ops = angular_momentum(d);
  std::mt19937_64 rng(7);
  const CVector v = oracle::random_state(d.dim(), rng);
  const auto from_state = expectations(SpinState(v), *ops);
  const auto from_rho = expectations(CMatrix(v * v.adjoint()), *ops);
  for (int a = 0; a < 3; ++a) CHECK(from_state[a] == doctest::Approx(from_rho[a]).epsilon(1e-12));
}

TEST_CASE("single-qubit reduction matches an explicit partial trace") {
  std::mt19937_64 rng(11);
  for (int j : {1, 2, 3}) {
    const SpinDimension d(j);
    const auto ops = angular_momentum(d);
    for (int trial = 0; trial < 20; ++trial) {
      const CVector v = oracle::random_state(d.dim(), rng);
      const auto rho = qubit_density_matrix(single_qubit_reduction(expectations(SpinState(v), *ops), d));
      const auto expected = oracle::first_qubit_state(j, v);
      CAPTURE(j);
      CHECK((rho - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("reduction rejects Bloch vectors outside the ball") {
  const SpinDimension d(2);
  CHECK_THROWS_AS(single_qubit_reduction({2.1, 0.0, 0.0}, d), Error);
  CHECK_NOTHROW(single_qubit_reduction({2.0 + 1e-9, 0.0, 0.0}, d));
}

TEST_CASE("coherent states saturate the uncertainty bound in their own frame") {
  const SpinDimension d(10);
  const auto ops = angular_momentum(d);
  const double th = 1.3, ph = -0.6;
  const auto s = spin_coherent_state(d, th, ph);
  const auto own = uncertainty_check(s, *ops, coherent_frame(th, ph));
  // transverse pair: Delta J1 Delta J2 = j/2 = |<J3>|/2
  CHECK(own[0].product == doctest::Approx(own[0].bound).epsilon(1e-10));
  CHECK(own[0].bound == doctest::Approx(5.0).epsilon(1e-10));
  for (const auto& u : uncertainty_check(s, *ops)) CHECK(u.product >= u.bound - 1e-10);
}

TEST_CASE("Robertson bound holds for random states") {
  std::mt19937_64 rng(3);
  const SpinDimension d(5);
  const auto ops = angular_momentum(d);
  for (int trial = 0; trial < 25; ++trial) {
    const SpinState s(oracle::random_state(d.dim(), rng));
    for (const auto& u : uncertainty_check(s, *ops)) CHECK(u.product >= u.bound - 1e-10);
  }
}
