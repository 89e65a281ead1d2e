#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "mqlab/bergeom.hpp"
#include "mqlab/multiclass.hpp"
#include "mqlab/queue_kernel.hpp"
#include "mqlab/report.hpp"

namespace mqlab {

/// inf over s <= u <= t of sum_{[s,u)} S1 + sum_{[u,t)} S2.
Work minplus_pair(const WorkSequence& s1, const WorkSequence& s2,
                  std::int64_t s, std::int64_t t);

/// First failing (s, t) of the replacement identity, if any.
struct ReplacementWitness {
  bool holds = true;
  std::int64_t s = 0;
  std::int64_t t = 0;
  Work lhs = 0;
  Work rhs = 0;
  WorkSequence s1, s2, s2_tilde;

  nlohmann::ordered_json to_json() const;
};

/// Checks that replacing S2 by its departure process D(S1, S2) leaves
/// every split infimum unchanged:
///   minplus_pair(S1, S2, s, t) == minplus_pair(S1, D(S1,S2), s, t)
/// for all s <= t in the window (Empty init at the window edge). A
/// deterministic statement; returns the first counterexample if any.
ReplacementWitness replacement_invariance_check(const WorkSequence& s1,
                                                const WorkSequence& s2);

/// The coupled pair of service processes. In the Bernoulli family the
/// transfer is pathwise: S2~ = D(S1,S2) and S1~ = S1 + U(S1,S2).
struct CoupledServicePair {
  WorkSequence s1, s2;        // originals
  WorkSequence s1_tilde, s2_tilde;
  bool swapped = false;       // inputs were reordered to put the lower
                              // intensity first
};

/// Bernoulli-family coupling: unused services are transferred from S2 to
/// S1. Requires binary values. Satisfies, pathwise for every arrival
/// sequence A on the window, D(D(A,S1),S2) = D(D(A,S1~),S2~).
CoupledServicePair make_coupled_pair_bernoulli(const WorkSequence& s1,
                                               const WorkSequence& s2);

/// Arrival source for interchangeability runs: a fixed window (repeated
/// across replications), a fixed multiclass window, or an i.i.d.
/// Bernoulli-geometric sampler.
using ArrivalSource =
    std::variant<WorkSequence, MulticlassWorkSequence, BerGeomParams>;

struct InterchangeOptions {
  std::int64_t replications = 1000;
  std::int64_t window = 64;   // slots per replication (sampler sources)
  int block_len = 3;
  Work label_cap = 3;
  double alpha = 1e-3;
};

/// Theorem-level distributional check: with independent service draws
/// from dist1 and dist2 (same family), the tandem outputs
/// D(D(A,S1),S2) and D(D(A,S2),S1) have equal block laws. Multiclass
/// sources are compared per cumulative class level.
TestReport verify_interchangeability(const BerGeomParams& dist1,
                                     const BerGeomParams& dist2,
                                     const ArrivalSource& arrivals,
                                     RngStream& rng,
                                     const InterchangeOptions& opts = {});

/// Exhaustive tiny-scale oracle: all service realizations of two
/// Bernoulli servers on a short window, with exact probabilities; the
/// output laws of the two orderings must agree to within `tol` in every
/// atom. Returns the largest absolute probability discrepancy.
double interchange_enumeration_gap(double q1, double q2,
                                   const WorkSequence& arrivals);

}  // namespace mqlab
