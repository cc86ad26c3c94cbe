#pragma once

#include <span>
#include <vector>

#include "qkt/interferometer.hpp"

namespace qkt {

/// Logarithm base for von Neumann entropies. Bits (log2) is the default:
/// the single-qubit entropy then ranges over [0, 1].
enum class EntropyBase { bits, nats };

/// log 2 expressed in `base`, the entropy of a maximally mixed qubit.
double max_qubit_entropy(EntropyBase base);

/// -sum lambda log lambda over the eigenvalues (1 +- r)/2 of the reduced
/// qubit state. r is clamped to 1 when within 1e-8 above it; eigenvalues
/// under 1e-15 contribute nothing.
double single_qubit_entropy(const BlochVector& bloch, EntropyBase base = EntropyBase::bits);

struct EntropyRecord {
  int n = 0;
  double s_cl = 0.0;
  double s_ps = 0.0;
  double delta_s = 0.0;  ///< s_cl - s_ps
  double p1 = 0.0;
};

/// Entropy of the classical mixture minus entropy of the D1 post-selected
/// state, both on a single qubit. Throws VanishingProbabilityError (tagged
/// with n) when D1 cannot click.
EntropyRecord delta_s(const BranchPair& branches, const InterferometerSetting& setting, int n,
                      EntropyBase base = EntropyBase::bits);

struct TimeAverage {
  double value = 0.0;     ///< mean Delta S over the included kicks, NaN if none
  double mean_p1 = 0.0;   ///< mean detection probability over the included kicks
  int samples = 0;        ///< included kicks
  int excluded = 0;       ///< kicks dropped for vanishing post-selection
  int n_kicks = 0;
};

/// Mean of Delta S(n) over n = 0..kicks (kicks + 1 samples, n = 0 included).
/// Kicks where D1 cannot click are left out and counted in `excluded`.
TimeAverage time_averaged_delta_s(const BranchPair& branches, const InterferometerSetting& setting,
                                  EntropyBase base = EntropyBase::bits);

/// Arithmetic mean over already-computed records.
TimeAverage average_records(std::span<const EntropyRecord> records, int excluded = 0);

/// Per-kick records for n = 0..kicks; failing kicks are skipped.
std::vector<EntropyRecord> delta_s_trace(const BranchPair& branches,
                                         const InterferometerSetting& setting,
                                         EntropyBase base = EntropyBase::bits);

struct ConcavityBound {
  double s_cl = 0.0;
  double lower_bound = 0.0;  ///< cos^2(s1/2) S(rho^11) + sin^2(s1/2) S(rho^22)
};

/// Both sides of the concavity inequality on single-qubit reductions.
ConcavityBound concavity_bound(const BranchPair& branches, const BeamSplitter& bs1, int n,
                               EntropyBase base = EntropyBase::bits);

}  // namespace qkt
