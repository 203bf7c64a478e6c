#pragma once

#include <limits>
#include <vector>

#include "ier/kernels.hpp"
#include "ier/partitions.hpp"

namespace ier {

/// Largest moment order evaluated exactly.
inline constexpr int kMaxMomentOrder = kMaxEnumeratedSize;

/// Pass as lambda to obtain the dense limit.
inline constexpr double kInfiniteLambda = std::numeric_limits<double>::infinity();

struct PartitionContribution {
  Partition partition;
  int gamma_blocks = 0;  // |gamma pi|
  int exponent = 0;      // |gamma pi| - 1 - k/2
  double density = 0.0;  // t(G_{gamma pi}, f, mu)
};

struct MomentReport {
  int k = 0;
  double lambda = 0.0;
  double value = 0.0;
  double nc2_part = 0.0;   // exponent-zero terms (non-crossing pair partitions)
  double remainder = 0.0;  // everything else
  std::vector<PartitionContribution> per_partition;  // canonical partition order
};

/// k-th moment of the sparse limit law:
/// sum over SS(k) of lambda^(|gamma pi| - 1 - k/2) t(G_{gamma pi}, f, mu).
/// Zero with no contributions for odd k, one for k = 0. lambda may be
/// kInfiniteLambda. Throws ResourceError for k > kMaxMomentOrder.
MomentReport limiting_moment(int k, double lambda, const Kernel& f, const WeightModel& mu);

/// k-th moment of the dense limit law: the sum restricted to NC_2(k).
double dense_moment(int k, const Kernel& f, const WeightModel& mu);

/// k-th moment of mu boxtimes semicircle: sum over NC_2(k) of the product over
/// the blocks b of K(pi) of the |b|-th moment of mu. DomainError for odd k.
double free_mult_semicircle_moment(int k, const WeightModel& mu);

}  // namespace ier
