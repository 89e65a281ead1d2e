#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mqlab/report.hpp"
#include "mqlab/work_sequence.hpp"

namespace mqlab {

/// Upper regularized incomplete gamma Q(s, x); series/continued-fraction
/// evaluation, good to ~1e-13 relative.
double regularized_gamma_q(double s, double x);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

/// Kolmogorov distribution upper tail Q(lambda).
double kolmogorov_sf(double lambda);

/// Standard normal upper tail.
double normal_sf(double z);

struct GofResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  std::int64_t sample_size = 0;
};

/// Pearson chi-square against given cell probabilities. Cells whose
/// expected count falls below 5 are merged into a tail bucket (scanning
/// from the end). Throws if fewer than two cells remain.
GofResult chi_square_gof(std::span<const std::int64_t> counts,
                         std::span<const double> probs);

/// Block-law comparison: two label sequences are cut into non-overlapping
/// blocks of length block_len and the empirical block distributions are
/// compared by a two-sample chi-square. Labels must lie in
/// [0, alphabet). Rare cells are pooled so every retained cell has
/// expected count >= 5 on both sides.
GofResult block_law_compare(std::span<const int> xs, std::span<const int> ys,
                            int alphabet, int block_len);

/// One-sample chi-square of non-overlapping blocks against an i.i.d.
/// product law with the given single-slot probabilities.
GofResult block_iid_gof(std::span<const int> xs,
                        std::span<const double> slot_probs, int block_len);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t sample_size = 0;
};

/// One-sample Kolmogorov-Smirnov against a cdf. n >= 10 required.
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

/// Theorem-5.1-style reversibility check: block law of the paired
/// sequence (A(n), D(n)) against the time-reversed swapped pair
/// (D(-n), A(-n)). The window is split in half so the two samples use
/// disjoint data. Values are capped at `cap` for the finite alphabet.
TestReport reversibility_test(const WorkSequence& arrivals,
                              const WorkSequence& departures, Work cap = 3,
                              int block_len = 2, double alpha = 1e-3);

/// Labels 0..cap from a work sequence (values above cap collapse to cap).
std::vector<int> capped_labels(const WorkSequence& seq, Work cap);

/// Empirical mean of a work sequence.
double empirical_intensity(const WorkSequence& seq);

}  // namespace mqlab
