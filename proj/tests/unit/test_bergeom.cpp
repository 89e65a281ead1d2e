#include "doctest.h"
#include "mqlab/bergeom.hpp"
#include "mqlab/stats.hpp"

#include <cmath>

using namespace mqlab;

TEST_CASE("c_value at interior points") {
  CHECK(BerGeomParams(0.5, 0.5).c_value().kind == BoundaryKind::interior);
  CHECK(BerGeomParams(0.5, 0.5).c_value().value == doctest::Approx(1.0));
  // (0.2/0.8) * (0.4/0.6) = 1/6
  CHECK(BerGeomParams(0.2, 0.4).c_value().value ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("c_value tags boundaries instead of dividing by zero") {
  CValue bern = BerGeomParams(0.5, 1.0).c_value();
  CHECK(bern.kind == BoundaryKind::bernoulli);
  CHECK(bern.value == doctest::Approx(1.0));  // p/(1-p)

  CValue geom = BerGeomParams(1.0, 0.25).c_value();
  CHECK(geom.kind == BoundaryKind::geometric);
  CHECK(geom.value == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(BerGeomParams(1.0, 1.0).c_value(), std::domain_error);
}

TEST_CASE("family equality ignores the boundary finite part") {
  CHECK(BerGeomParams(0.3, 1.0).family() == BerGeomParams(0.8, 1.0).family());
  CHECK(BerGeomParams(1.0, 0.5).family() == BerGeomParams(1.0, 0.9).family());
  CHECK(BerGeomParams(0.3, 1.0).family() != BerGeomParams(1.0, 0.3).family());
  CHECK(BerGeomParams(0.5, 0.5).family() != BerGeomParams(0.2, 0.4).family());
}

TEST_CASE("solve_params closed cases") {
  BerGeomParams p1 = solve_params(1.0, FamilySpec::interior(1.0));
  CHECK(p1.p() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p1.alpha() == doctest::Approx(0.5).epsilon(1e-12));

  BerGeomParams p2 = solve_params(0.3, FamilySpec::bernoulli());
  CHECK(p2.p() == doctest::Approx(0.3));
  CHECK(p2.alpha() == 1.0);

  BerGeomParams p3 = solve_params(0.5, FamilySpec::interior(1.0 / 6.0));
  CHECK(p3.p() == doctest::Approx(0.2).epsilon(1e-11));
  CHECK(p3.alpha() == doctest::Approx(0.4).epsilon(1e-11));
}

TEST_CASE("solve_params rejects impossible boundary intensities") {
  CHECK_THROWS_AS(solve_params(1.2, FamilySpec::bernoulli()),
                  std::domain_error);
  CHECK_THROWS_AS(solve_params(0.5, FamilySpec::geometric()),
                  std::domain_error);
  CHECK_NOTHROW(solve_params(2.0, FamilySpec::geometric()));
}

TEST_CASE("solve round-trips c and intensity on random interior params") {
  RngStream rng(17, 0);
  for (int i = 0; i < 500; ++i) {
    double p = 0.02 + 0.96 * rng.next_unit();
    double a = 0.02 + 0.96 * rng.next_unit();
    BerGeomParams x(p, a);
    BerGeomParams y = solve_params(x.intensity(), x.family());
    CHECK(y.intensity() == doctest::Approx(x.intensity()).epsilon(1e-10));
    CHECK(y.c_value().value ==
          doctest::Approx(x.c_value().value).epsilon(1e-9));
    CHECK(y.p() == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("sampled pmf matches the distribution") {
  BerGeomParams params(0.5, 0.5);
  CHECK(params.pmf(0) == doctest::Approx(0.5));
  CHECK(params.pmf(1) == doctest::Approx(0.25));
  CHECK(params.pmf(2) == doctest::Approx(0.125));

  RngStream rng(123, 0);
  const std::size_t n = 1000000;
  WorkSequence seq = sample_bergeom_process(params, 0, n, rng);

  const Work cap = 12;
  std::vector<std::int64_t> counts(cap + 1, 0);
  for (Work v : seq.values()) ++counts[std::min(v, cap)];
  std::vector<double> probs(cap + 1, 0.0);
  double tail = 1.0;
  for (Work k = 0; k < cap; ++k) {
    probs[k] = params.pmf(k);
    tail -= probs[k];
  }
  probs[cap] = tail;
  auto gof = chi_square_gof(counts, probs);
  CHECK(gof.p_value > 1e-3);
}

TEST_CASE("empirical mean within 5 standard errors") {
  BerGeomParams params(0.2, 0.4);  // mean 0.5
  RngStream rng(7, 0);
  const std::size_t n = 1000000;
  WorkSequence seq = sample_bergeom_process(params, 0, n, rng);
  double mean = empirical_intensity(seq);
  // var = E A^2 - mean^2; E A^2 = p (2 - alpha) / alpha^2
  double var = 0.2 * (2.0 - 0.4) / (0.4 * 0.4) - 0.25;
  double se = std::sqrt(var / static_cast<double>(n));
  CHECK(std::abs(mean - 0.5) < 5.0 * se);
}

TEST_CASE("zero arrival rate gives the zero sequence") {
  RngStream rng(1, 0);
  WorkSequence seq = sample_bergeom_process(BerGeomParams(0.0, 0.7), 5, 100, rng);
  for (Work v : seq.values()) CHECK(v == 0);
}

TEST_CASE("sampling is reproducible per stream") {
  BerGeomParams params(0.3, 0.6);
  RngStream r1(99, 4);
  RngStream r2(99, 4);
  WorkSequence a = sample_bergeom_process(params, 0, 5000, r1);
  WorkSequence b = sample_bergeom_process(params, 0, 5000, r2);
  CHECK(a == b);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(BerGeomParams(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(BerGeomParams(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BerGeomParams(1.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::interior(0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_params(0.0, FamilySpec::bernoulli()),
                  std::invalid_argument);
}
