#include "mqlab/bergeom.hpp"

#include <cmath>

namespace mqlab {

namespace {
constexpr double kSolveTol = 1e-12;
constexpr double kFamilyEqTol = 1e-9;
}  // namespace

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::interior: return "interior";
    case BoundaryKind::bernoulli: return "bernoulli";
    case BoundaryKind::geometric: return "geometric";
  }
  return "?";
}

FamilySpec FamilySpec::interior(double c_value) {
  if (!(c_value > 0.0) || !std::isfinite(c_value)) {
    throw std::invalid_argument("FamilySpec: interior c must be positive and finite");
  }
  return {BoundaryKind::interior, c_value};
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != BoundaryKind::interior) return true;
  double scale = std::max(std::abs(a.c), std::abs(b.c));
  return std::abs(a.c - b.c) <= kFamilyEqTol * scale;
}

BerGeomParams::BerGeomParams(double p, double alpha) : p_(p), alpha_(alpha) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BerGeomParams: p must lie in [0,1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("BerGeomParams: alpha must lie in (0,1]");
  }
}

CValue BerGeomParams::c_value() const {
  const bool p_boundary = (p_ == 1.0);
  const bool a_boundary = (alpha_ == 1.0);
  if (p_boundary && a_boundary) {
    throw std::domain_error(
        "c_value: constant-1 server (p=1, alpha=1) has no family");
  }
  if (a_boundary) {
    return {BoundaryKind::bernoulli, p_ / (1.0 - p_)};
  }
  if (p_boundary) {
    return {BoundaryKind::geometric, alpha_ / (1.0 - alpha_)};
  }
  return {BoundaryKind::interior, (p_ / (1.0 - p_)) * (alpha_ / (1.0 - alpha_))};
}

FamilySpec BerGeomParams::family() const {
  CValue cv = c_value();
  if (cv.kind == BoundaryKind::interior) return FamilySpec::interior(cv.value);
  return {cv.kind, 0.0};
}

double BerGeomParams::pmf(std::uint64_t k) const {
  if (k == 0) return 1.0 - p_;
  return p_ * alpha_ * std::pow(1.0 - alpha_, static_cast<double>(k - 1));
}

CValue c_value(const BerGeomParams& params) { return params.c_value(); }

BerGeomParams solve_params(double intensity, const FamilySpec& family) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw std::invalid_argument("solve_params: intensity must be positive");
  }
  switch (family.kind) {
    case BoundaryKind::bernoulli: {
      // alpha = 1, intensity = p
      if (intensity > 1.0) {
        throw std::domain_error("solve_params: bernoulli family forces p > 1");
      }
      return BerGeomParams(intensity, 1.0);
    }
    case BoundaryKind::geometric: {
      // p = 1, intensity = 1/alpha
      if (intensity < 1.0) {
        throw std::domain_error(
            "solve_params: geometric family forces alpha > 1");
      }
      return BerGeomParams(1.0, 1.0 / intensity);
    }
    case BoundaryKind::interior:
      break;
  }

  // Along the level set alpha = p / intensity, c(p, p/intensity) increases
  // monotonically in p from 0 to +inf, so bisection always terminates.
  const double c = family.c;
  const double p_max = std::min(1.0, intensity);
  auto c_of = [intensity](double p) {
    double a = p / intensity;
    return (p / (1.0 - p)) * (a / (1.0 - a));
  };

  double lo = 0.0;
  double hi = p_max;
  for (int iter = 0; iter < 400; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (c_of(mid) < c) {
      lo = mid;
    } else {
      hi = mid;
    }
    if ((hi - lo) <= kSolveTol * hi) break;
  }
  double p = 0.5 * (lo + hi);
  double alpha = p / intensity;
  if (!(p > 0.0 && p < 1.0 && alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("solve_params: no interior solution");
  }
  return BerGeomParams(p, alpha);
}

Work sample_bergeom(const BerGeomParams& params, RngStream& rng) {
  if (!rng.next_bernoulli(params.p())) return 0;
  if (params.alpha() == 1.0) return 1;
  // inversion: Geom(alpha) on {1, 2, ...}
  double u = 1.0 - rng.next_unit();  // (0, 1]
  double g = std::floor(std::log(u) / std::log1p(-params.alpha()));
  if (g < 0.0) g = 0.0;
  Work k = 1 + static_cast<Work>(g);
  return k > kMaxSlotWork ? kMaxSlotWork : k;
}

WorkSequence sample_bergeom_process(const BerGeomParams& params,
                                    std::int64_t start, std::size_t length,
                                    RngStream& rng) {
  std::vector<Work> values(length);
  for (auto& v : values) v = sample_bergeom(params, rng);
  return WorkSequence(start, std::move(values));
}

}  // namespace mqlab
