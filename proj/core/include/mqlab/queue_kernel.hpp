#pragma once

#include <cstdint>
#include <vector>

#include "mqlab/work_sequence.hpp"

namespace mqlab {

/// Joint trajectory of a single-class batch queue driven by (A, S):
/// contents X (one entry per slot edge, so size = window + 1),
/// departures D and unused service U on the window itself.
/// Slotwise: D(n) + U(n) = S(n) and X(n+1) = X(n) + A(n) - D(n),
/// with X = infinity absorbing.
struct QueuePath {
  std::vector<ExtWork> contents;  // X(start) .. X(end)
  WorkSequence departures;
  WorkSequence unused;

  std::int64_t start() const { return departures.start(); }
  std::int64_t end() const { return departures.end(); }

  ExtWork content_at(std::int64_t slot) const {
    return contents.at(static_cast<std::size_t>(slot - start()));
  }
};

/// One step of the batch queue recursion.
/// X(n+1) = [X(n) + A(n) - S(n)]_+, D(n) = min(X(n) + A(n), S(n)).
QueuePath run_queue(const WorkSequence& arrivals, const WorkSequence& services,
                    const InitialCondition& init);

/// Queue length at slot n via the sup formula restricted to the window:
/// X(n) = max over m in [start, n] of sum_{r=m}^{n-1} (A(r) - S(r)).
/// Equals run_queue with Empty init evaluated at n.
Work queue_length_sup(const WorkSequence& arrivals,
                      const WorkSequence& services, std::int64_t n);

/// Queues in series: stage k+1 arrivals are stage k departures at the
/// same slot index.
std::vector<QueuePath> tandem(const WorkSequence& arrivals,
                              const std::vector<WorkSequence>& services,
                              const std::vector<InitialCondition>& inits);

/// Cumulative two-stage departures by the min-plus triple sum:
///   sum_{r\in[0,t)} D2(r) = inf over 0 <= u1 <= u2 <= t of
///     sum_{[0,u1)} A + sum_{[u1,u2)} S1 + sum_{[u2,t)} S2.
/// Requires A(n) = 0 for n < 0. Direct enumeration; serves as the exact
/// oracle against the simulated tandem.
Work variational_departures(const WorkSequence& arrivals,
                            const WorkSequence& s1, const WorkSequence& s2,
                            std::int64_t t);

/// A restricted to slots >= -s; zero before.
WorkSequence truncate_before(const WorkSequence& arrivals, std::int64_t s);

/// Saturated queue: X identically infinite, D = S, U = 0.
QueuePath saturated_path(const WorkSequence& services);

/// Slots to discard before stationary-regime statistics:
/// max(1000, ceil(10 / (mu - lambda))).
std::int64_t burn_in_slots(double lambda, double mu);

}  // namespace mqlab
