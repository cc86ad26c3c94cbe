#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qkt/diagnostics.hpp"

using namespace qkt;

namespace {

BranchPair pair_for(int j, double theta, double phi, double k1, double k2, int n) {
  const SpinDimension d(j);
  return controlled_evolution(spin_coherent_state(d, theta, phi), d, k1, k2, pi / 2, n);
}

}  // namespace

TEST_CASE("qubit entropy values") {
  CHECK(single_qubit_entropy({0, 0, 0}, EntropyBase::nats) == doctest::Approx(std::log(2.0)));
  CHECK(single_qubit_entropy({0, 0, 0}) == doctest::Approx(1.0));
  CHECK(single_qubit_entropy({0, 0, 1}) == 0.0);
  CHECK(single_qubit_entropy({0.5, 0, 0}, EntropyBase::nats) == doctest::Approx(0.5623351446));
  CHECK(single_qubit_entropy({0, 0.5, 0}, EntropyBase::bits) == doctest::Approx(0.8112781245));
  CHECK(max_qubit_entropy(EntropyBase::bits) == 1.0);
  CHECK(max_qubit_entropy(EntropyBase::nats) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("qubit entropy agrees with a numerical eigendecomposition") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    const BlochVector b{u(rng), u(rng), u(rng)};
    const auto rho = qubit_density_matrix(b);
    CHECK(single_qubit_entropy(b, EntropyBase::bits) == doctest::Approx(oracle::entropy(rho, 2.0)).epsilon(1e-12));
    CHECK(single_qubit_entropy(b, EntropyBase::nats) ==
          doctest::Approx(oracle::entropy(rho, std::exp(1.0))).epsilon(1e-12));
  }
}

TEST_CASE("entropy clamps rounding above the pure-state radius only") {
  CHECK(single_qubit_entropy({1.0 + 5e-9, 0, 0}) == 0.0);
  CHECK_THROWS_AS(single_qubit_entropy({1.0 + 1e-6, 0, 0}), Error);
}

TEST_CASE("delta S vanishes when the beam splitters do not split") {
  const auto pair = pair_for(25, 2.25, 1.1, 0.5, 6.0, 200);
  for (int n : {0, 1, 50, 200}) {
    CHECK(std::abs(delta_s(pair, {{0.0, 0.0}, {0.0, 0.0}}, n).delta_s) <= 1e-10);
    CHECK(std::abs(delta_s(pair, {{pi, 0.0}, {pi, 0.0}}, n).delta_s) <= 1e-10);
  }
}

TEST_CASE("delta S vanishes for equal kappas") {
  const auto pair = pair_for(10, 1.0, -0.5, 3.0, 3.0, 60);
  for (double s1 : {0.4, 1.6, 2.7}) {
    for (double s2 : {0.2, 1.1, 3.0}) {
      for (int n = 0; n <= 60; n += 6) {
        CHECK(std::abs(delta_s(pair, {{s1, 0.3}, {s2, -0.2}}, n).delta_s) <= 1e-10);
      }
    }
  }
}

TEST_CASE("delta S is zero before the first kick") {
  const auto pair = pair_for(25, 2.25, 1.1, 0.5, 6.0, 0);
  CHECK(std::abs(delta_s(pair, {{1.0, 0.0}, {2.0, 0.0}}, 0).delta_s) <= 1e-12);
}

TEST_CASE("delta S record is consistent") {
  const auto pair = pair_for(6, 2.25, 1.1, 0.5, 6.0, 20);
  const InterferometerSetting s{{1.2, 0.0}, {1.9, 0.0}};
  const auto r = delta_s(pair, s, 13);
  CHECK(r.n == 13);
  CHECK(r.delta_s == doctest::Approx(r.s_cl - r.s_ps).epsilon(1e-15));
  CHECK(r.p1 == doctest::Approx(post_selected_state(pair, s.bs1, s.bs2, 13).trace));
  const auto nats = delta_s(pair, s, 13, EntropyBase::nats);
  CHECK(nats.delta_s == doctest::Approx(r.delta_s * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("concavity bound holds at every kick") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0.0, pi), phase(-pi, pi), kappa(0.0, 10.0);
  for (int run = 0; run < 4; ++run) {
    const auto pair = pair_for(12, angle(rng), phase(rng), kappa(rng), kappa(rng), 200);
    const BeamSplitter bs{angle(rng), phase(rng)};
    for (int n = 0; n <= 200; ++n) {
      const auto c = concavity_bound(pair, bs, n);
      CHECK(c.s_cl >= c.lower_bound - 1e-12);
    }
  }
}

TEST_CASE("time average covers kicks 0..N") {
  const auto pair = pair_for(8, 2.25, 1.1, 0.5, 6.0, 30);
  const InterferometerSetting s{{1.0, 0.0}, {1.0, 0.0}};
  const auto avg = time_averaged_delta_s(pair, s);
  CHECK(avg.samples == 31);
  CHECK(avg.excluded == 0);
  CHECK(avg.n_kicks == 30);
  double sum = 0.0, p = 0.0;
  for (int n = 0; n <= 30; ++n) {
    const auto r = delta_s(pair, s, n);
    sum += r.delta_s;
    p += r.p1;
  }
  CHECK(avg.value == doctest::Approx(sum / 31).epsilon(1e-13));
  CHECK(avg.mean_p1 == doctest::Approx(p / 31).epsilon(1e-13));
  const auto trace = delta_s_trace(pair, s);
  CHECK(trace.size() == 31);
  CHECK(average_records(trace).value == doctest::Approx(avg.value).epsilon(1e-15));
}

TEST_CASE("time average excludes kicks where D1 cannot click") {
  const auto pair = pair_for(4, 1.0, 0.5, 0.5, 6.0, 10);
  const auto avg = time_averaged_delta_s(pair, {{pi, 0.0}, {0.0, 0.0}});
  CHECK(avg.samples == 0);
  CHECK(avg.excluded == 11);
  CHECK(std::isnan(avg.value));
  CHECK(delta_s_trace(pair, {{pi, 0.0}, {0.0, 0.0}}).empty());
  CHECK_THROWS_AS(delta_s(pair, {{pi, 0.0}, {0.0, 0.0}}, 3), VanishingProbabilityError);
}
