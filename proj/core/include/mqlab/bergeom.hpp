#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mqlab/rng.hpp"
#include "mqlab/work_sequence.hpp"

namespace mqlab {

/// One-parameter sub-families where the invariant c degenerates:
/// bernoulli fixes alpha = 1 (batches of size 0/1), geometric fixes
/// p = 1 (every slot a geometric batch).
enum class BoundaryKind { interior, bernoulli, geometric };

std::string to_string(BoundaryKind k);

/// Interchangeability class of a Bernoulli-geometric process. Two servers
/// are interchangeable iff their FamilySpecs compare equal; within a
/// boundary sub-family every member is interchangeable with every other,
/// so boundary specs compare by kind alone.
struct FamilySpec {
  BoundaryKind kind = BoundaryKind::interior;
  double c = 1.0;  // meaningful for interior families only

  static FamilySpec interior(double c_value);
  static FamilySpec bernoulli() { return {BoundaryKind::bernoulli, 0.0}; }
  static FamilySpec geometric() { return {BoundaryKind::geometric, 0.0}; }

  friend bool operator==(const FamilySpec& a, const FamilySpec& b);
  friend bool operator!=(const FamilySpec& a, const FamilySpec& b) {
    return !(a == b);
  }
};

/// Value of the invariant c, tagged so the degenerate boundaries are not
/// collapsed into an infinity sentinel. For boundary kinds `value` holds
/// the surviving factor (p/(1-p) at alpha = 1, alpha/(1-alpha) at p = 1).
struct CValue {
  BoundaryKind kind;
  double value;
};

/// Parameters (p, alpha) of a Bernoulli-geometric work distribution:
/// mass 1-p at 0 and p*alpha*(1-alpha)^(k-1) at k >= 1; mean p/alpha.
class BerGeomParams {
 public:
  BerGeomParams(double p, double alpha);

  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double intensity() const { return p_ / alpha_; }

  /// Invariant c = (p/(1-p)) * (alpha/(1-alpha)), boundary-tagged at
  /// p = 1 or alpha = 1. Rejects the constant-1 server p = alpha = 1,
  /// which belongs to no family.
  CValue c_value() const;

  FamilySpec family() const;

  double pmf(std::uint64_t k) const;

  friend bool operator==(const BerGeomParams& a, const BerGeomParams& b) {
    return a.p_ == b.p_ && a.alpha_ == b.alpha_;
  }

 private:
  double p_;
  double alpha_;
};

CValue c_value(const BerGeomParams& params);

/// Unique (p, alpha) with p/alpha = intensity inside the given family.
/// Closed form on the boundaries, bisection on p otherwise; relative
/// tolerance 1e-12 on both constraints. Throws when the family admits no
/// such intensity (e.g. bernoulli with intensity > 1).
BerGeomParams solve_params(double intensity, const FamilySpec& family);

/// i.i.d. Bernoulli-geometric draws on [start, start+length).
WorkSequence sample_bergeom_process(const BerGeomParams& params,
                                    std::int64_t start, std::size_t length,
                                    RngStream& rng);

/// Single draw.
Work sample_bergeom(const BerGeomParams& params, RngStream& rng);

}  // namespace mqlab
