#pragma once

#include <cstdint>
#include <vector>

#include "mqlab/bergeom.hpp"
#include "mqlab/multiclass.hpp"
#include "mqlab/report.hpp"
#include "mqlab/rng.hpp"

namespace mqlab {

/// Target of the recursive construction: an m-type arrival law inside
/// one interchangeability family, with per-class intensities lambdas.
struct FixedPointSpec {
  FamilySpec family;
  std::vector<double> lambdas;

  std::size_t num_classes() const { return lambdas.size(); }
  double total_intensity() const;
  void validate() const;
};

/// A sampled window of the fixed-point arrival process, with the seed
/// provenance needed to reproduce it.
struct FixedPointSample {
  MulticlassWorkSequence arrivals;
  FixedPointSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::int64_t burn_in = 0;
};

/// Recursive construction: F_1 is the Bernoulli-geometric process with
/// intensity lambda_1 in the family; F_k feeds F_{k-1} into a queue whose
/// service has intensity lambda_1 + ... + lambda_k in the same family and
/// relabels the unused service as class k. The stage queue is saturated
/// in class k, so the combined k-class output equals the stage service
/// process slot for slot. A burn-in prefix (default heuristic) is built
/// and discarded so the returned window is close to stationary.
FixedPointSample construct_fixed_point(const FixedPointSpec& spec,
                                       std::int64_t start, std::size_t length,
                                       RngStream& rng,
                                       std::int64_t burn_in = -1);

struct FixedPointVerifyOptions {
  int block_len = 3;
  Work label_cap = 3;
  double alpha = 1e-3;
};

/// Feeds a fixed-point sample through the given server and compares the
/// m-type departure law with an independently constructed sample, via
/// block chi-square over the slot-label alphabet, plus marginal checks.
/// With server intensity equal to the total arrival intensity the queue
/// is saturated and the comparison is Claim-2 exact (departures equal
/// the relabeled construction); stationary statistics are not used there.
TestReport verify_fixed_point(const FixedPointSpec& spec,
                              const BerGeomParams& server, std::size_t slots,
                              RngStream& rng,
                              const FixedPointVerifyOptions& opts = {});

/// The two tandem orderings of the fixed-point theorem's proof:
///   F_m -> S_mu -> G -> S_sum -> H      and
///   F_m -> S_sum -> J -> S_mu -> K.
/// Checks Claim 1 on G (first m-1 classes match F_{m-1}; combined
/// process matches the saturated server's law), the exact saturation
/// structure of the S_sum stages, and that H, K and F_m share one block
/// law.
TestReport claims_experiment(const FixedPointSpec& spec,
                             const BerGeomParams& mu_server,
                             const BerGeomParams& saturated_server,
                             std::size_t slots, RngStream& rng,
                             const FixedPointVerifyOptions& opts = {});

}  // namespace mqlab
