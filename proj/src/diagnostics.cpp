#include "qkt/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qkt {

namespace {

constexpr double kClampTol = 1e-8;
constexpr double kEigenFloor = 1e-15;

double entropy_of(const ConditionalState& state, SpinDimension d, EntropyBase base) {
  return single_qubit_entropy(single_qubit_reduction(state.expectations, d), base);
}

}  // namespace

double max_qubit_entropy(EntropyBase base) {
  return base == EntropyBase::bits ? 1.0 : std::numbers::ln2;
}

double single_qubit_entropy(const BlochVector& bloch, EntropyBase base) {
  double r = bloch.r();
  if (!(r <= 1.0 + kClampTol)) {
    throw Error(ErrorCode::non_physical_state,
                "Bloch vector length " + std::to_string(r) + " exceeds 1");
  }
  r = std::min(r, 1.0);
  double s = 0.0;
  for (const double lambda : {0.5 * (1.0 + r), 0.5 * (1.0 - r)}) {
    if (lambda >= kEigenFloor) s -= lambda * std::log(lambda);
  }
  return base == EntropyBase::bits ? s / std::numbers::ln2 : s;
}

EntropyRecord delta_s(const BranchPair& branches, const InterferometerSetting& setting, int n,
                      EntropyBase base) {
  const auto& m = branches.moments(n);
  const auto cl = classical_mixture(m, setting.bs1);
  const auto ps = post_selected_state(m, setting.bs1, setting.bs2, n);
  EntropyRecord r;
  r.n = n;
  r.s_cl = entropy_of(cl, branches.dimension(), base);
  r.s_ps = entropy_of(ps, branches.dimension(), base);
  r.delta_s = r.s_cl - r.s_ps;
  r.p1 = ps.trace;
  return r;
}

std::vector<EntropyRecord> delta_s_trace(const BranchPair& branches,
                                         const InterferometerSetting& setting, EntropyBase base) {
  std::vector<EntropyRecord> out;
  out.reserve(static_cast<std::size_t>(branches.kicks()) + 1);
  for (int n = 0; n <= branches.kicks(); ++n) {
    try {
      out.push_back(delta_s(branches, setting, n, base));
    } catch (const VanishingProbabilityError&) {
    }
  }
  return out;
}

TimeAverage average_records(std::span<const EntropyRecord> records, int excluded) {
  TimeAverage avg;
  avg.samples = static_cast<int>(records.size());
  avg.excluded = excluded;
  avg.n_kicks = avg.samples + excluded - 1;
  if (records.empty()) {
    avg.value = std::numeric_limits<double>::quiet_NaN();
    avg.mean_p1 = 0.0;
    return avg;
  }
  double sum = 0.0;
  double sum_p1 = 0.0;
  for (const auto& r : records) {
    sum += r.delta_s;
    sum_p1 += r.p1;
  }
  avg.value = sum / static_cast<double>(records.size());
  avg.mean_p1 = sum_p1 / static_cast<double>(records.size());
  return avg;
}

TimeAverage time_averaged_delta_s(const BranchPair& branches, const InterferometerSetting& setting,
                                  EntropyBase base) {
  const auto records = delta_s_trace(branches, setting, base);
  const int excluded = branches.kicks() + 1 - static_cast<int>(records.size());
  return average_records(records, excluded);
}

ConcavityBound concavity_bound(const BranchPair& branches, const BeamSplitter& bs1, int n,
                               EntropyBase base) {
  const auto& m = branches.moments(n);
  const auto d = branches.dimension();
  const double w1 = bs1.cos_half() * bs1.cos_half();
  const double w2 = bs1.sin_half() * bs1.sin_half();
  const Expectations e11{m.j11[0] / m.norm11, m.j11[1] / m.norm11, m.j11[2] / m.norm11};
  const Expectations e22{m.j22[0] / m.norm22, m.j22[1] / m.norm22, m.j22[2] / m.norm22};
  ConcavityBound out;
  out.s_cl = entropy_of(classical_mixture(m, bs1), d, base);
  out.lower_bound = w1 * single_qubit_entropy(single_qubit_reduction(e11, d), base) +
                    w2 * single_qubit_entropy(single_qubit_reduction(e22, d), base);
  return out;
}

}  // namespace qkt
