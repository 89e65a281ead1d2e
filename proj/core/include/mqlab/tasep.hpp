#pragma once

#include <cstdint>
#include <vector>

#include "mqlab/fixed_points.hpp"
#include "mqlab/multiclass.hpp"
#include "mqlab/report.hpp"
#include "mqlab/rng.hpp"

namespace mqlab {

/// Ring configuration of the m-type exclusion process. Site values are
/// 1..m for particles (1 = highest priority) and 0 for a hole; 0 plays
/// the role the paper's infinity symbol does.
class TasepConfig {
 public:
  static constexpr int kHole = 0;

  TasepConfig(std::vector<int> sites, int num_classes);

  std::size_t ring_length() const { return sites_.size(); }
  int num_classes() const { return num_classes_; }
  int site(std::size_t i) const { return sites_[i]; }
  const std::vector<int>& sites() const { return sites_; }

  /// Particle count per value; index 0 counts holes.
  std::vector<std::int64_t> value_counts() const;

  /// Particles of class > r become holes.
  TasepConfig project_to_classes(int r) const;

  friend bool operator==(const TasepConfig& a, const TasepConfig& b) {
    return a.num_classes_ == b.num_classes_ && a.sites_ == b.sites_;
  }

 private:
  std::vector<int> sites_;
  int num_classes_;
};

/// Slot-per-site image of a Bernoulli-family arrival window: a class-r
/// arrival at slot n puts a class-r particle at site n, an empty slot a
/// hole. Rejects slots holding more than one customer.
TasepConfig arrivals_to_config(const MulticlassWorkSequence& arrivals);

/// Continuous-time dynamics for `duration`: every site carries a rate-1
/// Poisson clock; when a site holding a class-r particle fires, the
/// particle swaps with its left neighbour iff that neighbour is a hole
/// or a particle of class > r. Site clocks (rather than particle clocks)
/// let one attempt stream drive a configuration and its projection
/// simultaneously.
TasepConfig tasep_step_continuous(const TasepConfig& config, double duration,
                                  RngStream& rng);

/// Same dynamics driven by an explicit attempt sequence (site indices).
TasepConfig tasep_apply_attempts(const TasepConfig& config,
                                 const std::vector<std::uint32_t>& attempts);

/// Poisson(mean) sample, exact for all means.
std::int64_t sample_poisson(double mean, RngStream& rng);

struct StationarityOptions {
  int replications = 50;
  double alpha = 1e-3;
  bool negative_control = false;  // independent-classes initial law
  int threads = 1;
  double z_pass = 3.0;   // fixed-point runs must stay inside
  double z_drift = 5.0;  // the control must drift beyond
};

/// Samples initial rings from fixed-point windows (or an independent
/// product law for the negative control), evolves each for `run_time`,
/// and compares time-0 with time-T statistics: per-class densities,
/// adjacent-pair frequencies and triple frequencies, each as a z-score
/// of the mean drift across replications.
TestReport stationarity_check(const FixedPointSpec& spec,
                              std::size_t ring_length, double run_time,
                              RngStream& rng,
                              const StationarityOptions& opts = {});

/// Labels in [0,1] for the equal-intensity Bernoulli-family fixed point
/// with total intensity 1: class r maps to the midpoint (r - 1/2)/m.
struct LabelSequence {
  std::vector<double> labels;
  int num_classes = 0;
};

/// m-class saturated construction with lambda_i = 1/m; every slot holds
/// exactly one customer, so every slot gets a label.
LabelSequence finite_label_process(int num_classes, std::size_t slots,
                                   RngStream& rng);

struct LagMatch {
  int lag = 0;
  double frequency = 0.0;
  double ci_halfwidth = 0.0;  // normal-approximation 99% interval
  std::int64_t matches = 0;
  std::int64_t pairs = 0;
};

/// Empirical P(L(0) = L(k)) per lag k = 0..max_lag.
std::vector<LagMatch> repeat_statistics(const LabelSequence& labels,
                                        int max_lag);

/// Exact P(L(0) = L(1)) for the equal-intensity construction, from the
/// stationary law of the two-stage threshold chain. Enumerates queue
/// contents up to a truncation with geometrically negligible remainder.
double label_match_probability_exact(int num_classes);

}  // namespace mqlab
