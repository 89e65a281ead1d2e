#include "doctest.h"
#include "mqlab/interchange.hpp"
#include "mqlab/rng.hpp"

using namespace mqlab;

namespace {

WorkSequence random_seq(RngStream& rng, std::int64_t start, std::size_t len,
                        Work vmax) {
  std::vector<Work> v(len);
  for (auto& x : v) x = rng.next_below(vmax + 1);
  return WorkSequence(start, std::move(v));
}

WorkSequence random_binary(RngStream& rng, std::size_t len, double q) {
  std::vector<Work> v(len);
  for (auto& x : v) x = rng.next_bernoulli(q) ? 1 : 0;
  return WorkSequence(0, std::move(v));
}

WorkSequence reversed(const WorkSequence& w) {
  std::vector<Work> v(w.values().rbegin(), w.values().rend());
  return WorkSequence(w.start(), std::move(v));
}

}  // namespace

TEST_CASE("minplus_pair basics") {
  WorkSequence s1(0, {2, 2});
  WorkSequence s2(0, {1, 3});
  CHECK(minplus_pair(s1, s2, 0, 0) == 0);  // empty sums
  CHECK(minplus_pair(s1, s2, 0, 2) == 4);  // min{1+3, 2+3, 2+2}
  CHECK(minplus_pair(WorkSequence::zeros(0, 2), s2, 0, 2) == 0);
  CHECK_THROWS_AS(minplus_pair(s1, s2, 1, 0), std::invalid_argument);
}

TEST_CASE("minplus_pair agrees with direct enumeration") {
  RngStream rng(40, 0);
  for (int inst = 0; inst < 500; ++inst) {
    std::size_t len = 1 + rng.next_below(12);
    WorkSequence s1 = random_seq(rng, 0, len, 5);
    WorkSequence s2 = random_seq(rng, 0, len, 5);
    std::int64_t s = static_cast<std::int64_t>(rng.next_below(len + 1));
    std::int64_t t = s + static_cast<std::int64_t>(
                             rng.next_below(len + 1 - static_cast<std::size_t>(s)));
    WideSum best = -1;
    for (std::int64_t u = s; u <= t; ++u) {
      WideSum v = s1.sum(s, u) + s2.sum(u, t);
      if (best < 0 || v < best) best = v;
    }
    CHECK(minplus_pair(s1, s2, s, t) == static_cast<Work>(best));
  }
}

TEST_CASE("replacement invariance holds deterministically") {
  RngStream rng(41, 0);
  for (int inst = 0; inst < 2000; ++inst) {
    std::size_t len = 1 + rng.next_below(48);
    WorkSequence s1 = random_seq(rng, 0, len, 6);
    WorkSequence s2 = random_seq(rng, 0, len, 6);
    auto witness = replacement_invariance_check(s1, s2);
    CHECK(witness.holds);
  }
}

TEST_CASE("replacement invariance trivial regimes") {
  // no unused service: S2 and its replacement coincide
  WorkSequence s1(0, {4, 4, 4});
  WorkSequence s2(0, {1, 1, 1});
  auto w = replacement_invariance_check(s1, s2);
  CHECK(w.holds);
  CHECK(w.s2_tilde == s2);

  // huge S1 swallows every service
  RngStream rng(42, 0);
  WorkSequence big(0, {9, 9, 9, 9});
  WorkSequence s = random_seq(rng, 0, 4, 3);
  auto w2 = replacement_invariance_check(big, s);
  CHECK(w2.holds);
  CHECK(w2.s2_tilde == s);
}

TEST_CASE("witness serializes its inputs") {
  WorkSequence s1(0, {1, 0});
  WorkSequence s2(0, {0, 2});
  auto w = replacement_invariance_check(s1, s2);
  auto j = w.to_json();
  CHECK(j["holds"] == true);
  CHECK(j["s1"]["values"].size() == 2);
}

TEST_CASE("bernoulli coupling transfers unused service") {
  // slot with S1 = 0, S2 = 1 and an empty queue moves the service across
  WorkSequence s1(0, {0, 1});
  WorkSequence s2(0, {1, 0});
  auto pair = make_coupled_pair_bernoulli(s1, s2);
  CHECK(pair.s1_tilde == WorkSequence(0, {1, 1}));
  CHECK(pair.s2_tilde == WorkSequence(0, {0, 0}));

  CHECK_THROWS_AS(make_coupled_pair_bernoulli(WorkSequence(0, {2}),
                                              WorkSequence(0, {1})),
                  std::invalid_argument);
}

TEST_CASE("bernoulli coupling conserves total service") {
  RngStream rng(43, 0);
  for (int inst = 0; inst < 500; ++inst) {
    std::size_t len = 1 + rng.next_below(40);
    auto pair = make_coupled_pair_bernoulli(random_binary(rng, len, 0.4),
                                            random_binary(rng, len, 0.7));
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(pair.s1_tilde.values()[i] + pair.s2_tilde.values()[i] ==
            pair.s1.values()[i] + pair.s2.values()[i]);
      CHECK(pair.s1_tilde.values()[i] <= 1);
    }
  }
}

TEST_CASE("bernoulli coupling preserves tandem output pathwise") {
  RngStream rng(44, 0);
  for (int inst = 0; inst < 300; ++inst) {
    std::size_t len = 1 + rng.next_below(32);
    auto pair = make_coupled_pair_bernoulli(random_binary(rng, len, 0.4),
                                            random_binary(rng, len, 0.7));
    for (int rep = 0; rep < 5; ++rep) {
      WorkSequence a = random_seq(rng, 0, len, 2);
      auto d1 = run_queue(a, pair.s1, InitialCondition::empty());
      auto d2 = run_queue(d1.departures, pair.s2, InitialCondition::empty());
      auto e1 = run_queue(a, pair.s1_tilde, InitialCondition::empty());
      auto e2 = run_queue(e1.departures, pair.s2_tilde,
                          InitialCondition::empty());
      CHECK(d2.departures == e2.departures);
    }
  }
}

TEST_CASE("reversed coupled pair also satisfies the invariance") {
  RngStream rng(45, 0);
  for (int inst = 0; inst < 500; ++inst) {
    std::size_t len = 1 + rng.next_below(32);
    WorkSequence s1 = random_seq(rng, 0, len, 6);
    WorkSequence s2 = random_seq(rng, 0, len, 6);
    auto q = run_queue(s1, s2, InitialCondition::empty());
    std::vector<Work> s1t(len);
    for (std::size_t i = 0; i < len; ++i) {
      s1t[i] = s1.values()[i] + q.unused.values()[i];
    }
    auto w = replacement_invariance_check(
        reversed(q.departures), reversed(WorkSequence(0, std::move(s1t))));
    CHECK(w.holds);
  }
}

TEST_CASE("exhaustive tiny interchange enumeration") {
  WorkSequence a(0, {2, 0, 1, 0});
  CHECK(interchange_enumeration_gap(0.4, 0.7, a) < 1e-12);
  CHECK(interchange_enumeration_gap(0.25, 0.9, a) < 1e-12);
}

TEST_CASE("verify_interchangeability sanity and preconditions") {
  RngStream rng(46, 0);
  InterchangeOptions opts;
  opts.replications = 400;
  opts.window = 48;

  // bernoulli family, distinct rates
  auto report = verify_interchangeability(
      BerGeomParams(0.4, 1.0), BerGeomParams(0.7, 1.0),
      WorkSequence(0, {3, 0, 0, 2, 0, 1, 0, 0, 4, 0, 0, 0, 1, 1, 0, 0,
                       2, 0, 0, 0, 0, 3, 0, 0, 1, 0, 2, 0, 0, 0, 0, 1,
                       0, 0, 3, 0, 0, 0, 2, 0, 1, 0, 0, 0, 0, 2, 0, 0}),
      rng, opts);
  CHECK(report.overall_pass());

  CHECK_THROWS_AS(
      verify_interchangeability(BerGeomParams(0.4, 1.0),
                                BerGeomParams(1.0, 0.4),
                                WorkSequence(0, {1}), rng, opts),
      std::invalid_argument);
}

TEST_CASE("interior family interchangeability, sampled arrivals") {
  RngStream rng(47, 0);
  InterchangeOptions opts;
  opts.replications = 300;
  opts.window = 64;
  opts.label_cap = 2;
  // two members of the c = 1 family with different intensities
  BerGeomParams d1 = solve_params(0.8, FamilySpec::interior(1.0));
  BerGeomParams d2 = solve_params(1.6, FamilySpec::interior(1.0));
  auto report = verify_interchangeability(
      d1, d2, BerGeomParams(0.2, 0.5), rng, opts);
  CHECK(report.overall_pass());
}
