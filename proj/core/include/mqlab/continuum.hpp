#pragma once

#include <cstdint>
#include <vector>

#include "mqlab/report.hpp"
#include "mqlab/rng.hpp"

namespace mqlab {

/// A timed event; cls = 0 marks an unused service, classes are 1-based.
struct MarkedPoint {
  double time = 0.0;
  int cls = 1;
};

/// Finite window of a marked point process: strictly increasing event
/// times inside [t_min, t_max]. Simultaneous events are rejected (they
/// have probability zero under the continuous models).
class MarkedPointProcess {
 public:
  MarkedPointProcess() = default;
  MarkedPointProcess(double t_min, double t_max,
                     std::vector<MarkedPoint> events);

  static MarkedPointProcess poisson(double rate, double t_min, double t_max,
                                    RngStream& rng, int cls = 1);

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  const std::vector<MarkedPoint>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// Events of classes 1..r only.
  MarkedPointProcess restrict_to_classes(int r) const;

  /// Events in [a, b], with the horizon narrowed accordingly.
  MarkedPointProcess slice_time(double a, double b) const;

  std::vector<double> interevent_times() const;
  std::vector<double> interevent_times(int cls) const;
  std::vector<int> class_labels() const;
  std::int64_t count_class(int cls) const;

 private:
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  std::vector<MarkedPoint> events_;
};

/// Left-edge state for the event-driven queue. saturated_bottom models an
/// inexhaustible reservoir of customers one class below every real
/// arrival class: each service event departs, labelled by the reservoir
/// class when no real customer waits (the Lemma-1 regime realized by a
/// priority-matching scan).
struct ContinuousInit {
  enum class Kind { empty, finite, saturated_bottom };
  Kind kind = Kind::empty;
  std::vector<std::int64_t> initial_counts;  // per class, for finite

  static ContinuousInit empty() { return {Kind::empty, {}}; }
  static ContinuousInit finite(std::vector<std::int64_t> counts) {
    return {Kind::finite, std::move(counts)};
  }
  static ContinuousInit saturated_bottom() {
    return {Kind::saturated_bottom, {}};
  }
};

struct Mm1Output {
  MarkedPointProcess departures;
  MarkedPointProcess unused;  // events carry cls = 0
};

/// Event-driven multi-class ./M/1 queue: at each service event the
/// highest-priority waiting customer departs with its class; otherwise
/// the event is unused (or a reservoir departure under saturated_bottom).
Mm1Output mm1_run(const MarkedPointProcess& arrivals,
                  const MarkedPointProcess& services,
                  const ContinuousInit& init);

/// Recursive multi-type fixed point for continuous-time M/M/1: stage k
/// feeds the (k-1)-type process into a rate-(lambda_1+...+lambda_k)
/// server saturated in class k. A burn-in interval is built and
/// discarded.
MarkedPointProcess mm1_fixed_point(const std::vector<double>& lambdas,
                                   double t_min, double t_max, RngStream& rng,
                                   double burn_in = -1.0);

struct Mm1VerifyOptions {
  int block_len = 3;
  double alpha = 1e-3;
};

/// Feeds the fixed point through a rate-mu server and compares arrival
/// and departure laws: per-class interevent two-sample KS against an
/// independent construction, one-sample KS of combined interarrivals
/// against Exp(sum lambda), and a class-label block chi-square.
TestReport mm1_verify(const std::vector<double>& lambdas, double mu,
                      double horizon, RngStream& rng,
                      const Mm1VerifyOptions& opts = {});

struct ClusteringEstimate {
  double conditional_rate = 0.0;  // events of the class per unit time,
                                  // right after an event of the class
  std::int64_t triggers = 0;      // events with room before the horizon
  std::int64_t hits = 0;          // triggers followed within eps
  double eps = 0.0;
};

/// Empirical conditional intensity: fraction of class-cls events followed
/// by another class-cls event within eps, divided by eps.
ClusteringEstimate conditional_intensity_after(const MarkedPointProcess& mpp,
                                               int cls, double eps);

/// Euler-grid cumulative path with Gaussian increments.
struct BrownianGridPath {
  double dt = 1.0;
  double drift = 0.0;
  double variance = 1.0;
  std::vector<double> values;  // values[k] = level at time k*dt; size steps+1

  std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }

  static BrownianGridPath sample(double drift, double variance, double dt,
                                 std::size_t steps, RngStream& rng);
};

enum class BrownianStart { stationary_draw, zero };

struct BrownianQueueOutput {
  std::vector<double> queue;  // Q at each grid edge, size steps+1
  BrownianGridPath departures;
  BrownianGridPath unused;
};

/// Reflected recursion Q_{k+1} = max(Q_k + dA_k - dS_k, 0) with the left
/// edge drawn from the stationary law Exp(mu - lambda) (or zero), then
/// D = A + Q_0 - Q and U = S - D.
BrownianQueueOutput brownian_queue(const BrownianGridPath& arrivals,
                                   const BrownianGridPath& services,
                                   RngStream& rng,
                                   BrownianStart start = BrownianStart::stationary_draw);

/// Which drift the first-stage service process of the two-type Brownian
/// construction carries. `construction` uses lambda1 + lambda2, the value
/// the saturation argument requires; `paper_text` uses lambda2 alone for
/// comparison.
enum class TwoTypeServiceDrift { construction, paper_text };

struct BrownianTwoTypeOptions {
  double k_block_time = 10.0;  // increment span, in time units, for KS
  double alpha = 1e-3;
  TwoTypeServiceDrift service_drift = TwoTypeServiceDrift::construction;
  double burn_in_time = 50.0;
};

/// Builds the two-type fixed point (D, U) from a drift-lambda1 arrival
/// and a first-stage service, feeds it through a drift-mu server, and
/// compares per-type increment laws of arrivals and departures.
TestReport brownian_two_type(double lambda1, double lambda2, double mu,
                             double dt, std::size_t steps, RngStream& rng,
                             const BrownianTwoTypeOptions& opts = {});

}  // namespace mqlab
