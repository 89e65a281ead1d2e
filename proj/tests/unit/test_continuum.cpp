#include "doctest.h"
#include "mqlab/continuum.hpp"
#include "mqlab/queue_kernel.hpp"
#include "mqlab/stats.hpp"

#include <cmath>

using namespace mqlab;

TEST_CASE("event-driven queue basics") {
  // a service with nobody waiting is unused
  MarkedPointProcess a(0.0, 10.0, {});
  MarkedPointProcess s(0.0, 10.0, {{4.0, 1}});
  auto out = mm1_run(a, s, ContinuousInit::empty());
  CHECK(out.departures.size() == 0);
  CHECK(out.unused.size() == 1);

  // one arrival before one service departs with its class
  MarkedPointProcess a2(0.0, 10.0, {{1.0, 1}});
  auto out2 = mm1_run(a2, s, ContinuousInit::empty());
  CHECK(out2.departures.size() == 1);
  CHECK(out2.departures.events()[0].time == 4.0);
  CHECK(out2.unused.size() == 0);

  // priority: class 2 waits while class 1 departs first
  MarkedPointProcess a3(0.0, 10.0, {{1.0, 2}, {2.0, 1}});
  MarkedPointProcess s3(0.0, 10.0, {{3.0, 1}});
  auto out3 = mm1_run(a3, s3, ContinuousInit::empty());
  CHECK(out3.departures.events()[0].cls == 1);
}

TEST_CASE("collisions and horizon mismatches are rejected") {
  MarkedPointProcess a(0.0, 5.0, {{1.0, 1}});
  MarkedPointProcess s(0.0, 5.0, {{1.0, 1}});
  CHECK_THROWS_AS(mm1_run(a, s, ContinuousInit::empty()),
                  std::invalid_argument);
  MarkedPointProcess s2(0.0, 6.0, {{2.0, 1}});
  CHECK_THROWS_AS(mm1_run(a, s2, ContinuousInit::empty()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      MarkedPointProcess(0.0, 5.0, {{1.0, 1}, {1.0, 1}}),
      std::invalid_argument);
}

TEST_CASE("event count conservation") {
  RngStream rng(80, 0);
  for (int rep = 0; rep < 50; ++rep) {
    RngStream ra = rng.substream(2 * rep);
    RngStream rs = rng.substream(2 * rep + 1);
    auto a = MarkedPointProcess::poisson(0.7, 0.0, 200.0, ra);
    auto s = MarkedPointProcess::poisson(1.0, 0.0, 200.0, rs);
    auto out = mm1_run(a, s, ContinuousInit::empty());
    CHECK(out.departures.size() + out.unused.size() == s.size());
  }
}

TEST_CASE("restriction commutes with the event-driven run") {
  RngStream rng(81, 0);
  for (int rep = 0; rep < 30; ++rep) {
    RngStream r = rng.substream(rep);
    RngStream r1 = r.substream(1);
    RngStream r2 = r.substream(2);
    RngStream r3 = r.substream(3);
    auto a1 = MarkedPointProcess::poisson(0.3, 0.0, 300.0, r1, 1);
    auto a2 = MarkedPointProcess::poisson(0.2, 0.0, 300.0, r2, 2);
    std::vector<MarkedPoint> merged;
    std::merge(a1.events().begin(), a1.events().end(), a2.events().begin(),
               a2.events().end(), std::back_inserter(merged),
               [](const MarkedPoint& x, const MarkedPoint& y) {
                 return x.time < y.time;
               });
    MarkedPointProcess a(0.0, 300.0, std::move(merged));
    auto s = MarkedPointProcess::poisson(0.9, 0.0, 300.0, r3);

    auto full = mm1_run(a, s, ContinuousInit::empty());
    auto restricted = mm1_run(a.restrict_to_classes(1), s,
                              ContinuousInit::empty());
    auto lhs = full.departures.restrict_to_classes(1);
    auto rhs = restricted.departures;
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      CHECK(lhs.events()[i].time == rhs.events()[i].time);
      CHECK(lhs.events()[i].cls == rhs.events()[i].cls);
    }
  }
}

TEST_CASE("one-type fixed point is Poisson") {
  RngStream rng(82, 0);
  auto fp = mm1_fixed_point({0.5}, 0.0, 50000.0, rng);
  auto gaps = fp.interevent_times();
  auto res = ks_test(gaps, [](double x) { return 1.0 - std::exp(-0.5 * x); });
  CHECK(res.p_value > 1e-3);
}

TEST_CASE("two-type fixed point has Poisson combined process") {
  RngStream rng(83, 0);
  auto fp = mm1_fixed_point({0.5, 0.3}, 0.0, 50000.0, rng);
  auto gaps = fp.interevent_times();
  auto res = ks_test(gaps, [](double x) { return 1.0 - std::exp(-0.8 * x); });
  CHECK(res.p_value > 1e-3);
  // intensities per class
  double t = 50000.0;
  CHECK(static_cast<double>(fp.count_class(1)) / t ==
        doctest::Approx(0.5).epsilon(0.05));
  CHECK(static_cast<double>(fp.count_class(2)) / t ==
        doctest::Approx(0.3).epsilon(0.08));
}

TEST_CASE("second-class events cluster at short range") {
  RngStream rng(84, 0);
  auto fp = mm1_fixed_point({0.5, 0.05}, 0.0, 300000.0, rng);
  auto est = conditional_intensity_after(fp, 2, 0.01);
  // instantaneous rate right after a class-2 event approaches
  // lambda1 + lambda2, far above the marginal rate lambda2
  CHECK(est.conditional_rate > 0.4);
  CHECK(est.conditional_rate < 0.7);
}

TEST_CASE("mm1_verify passes and its negative control fails") {
  RngStream rng(85, 0);
  auto report = mm1_verify({0.5, 0.3}, 1.2, 30000.0, rng);
  CHECK(report.overall_pass());

  // the class-2 marginal is not Poisson: KS against Exp(lambda2) rejects
  RngStream rng2(86, 0);
  auto fp = mm1_fixed_point({0.5, 0.3}, 0.0, 50000.0, rng2);
  auto gaps2 = fp.interevent_times(2);
  auto res = ks_test(gaps2, [](double x) { return 1.0 - std::exp(-0.3 * x); });
  CHECK(res.p_value < 1e-6);
}

TEST_CASE("brownian queue reflection identities") {
  RngStream rng(87, 0);
  RngStream ra = rng.substream(1);
  RngStream rs = rng.substream(2);
  auto a = BrownianGridPath::sample(0.0, 1.0, 1e-3, 200000, ra);
  auto s = BrownianGridPath::sample(1.0, 1.0, 1e-3, 200000, rs);
  RngStream rq = rng.substream(3);
  auto out = brownian_queue(a, s, rq);
  for (std::size_t k = 0; k < out.queue.size(); k += 997) {
    CHECK(out.queue[k] >= 0.0);
    CHECK(out.departures.values[k] + out.unused.values[k] ==
          doctest::Approx(s.values[k]).epsilon(1e-9));
  }
  // U is nondecreasing
  for (std::size_t k = 0; k + 1 < out.unused.values.size(); ++k) {
    CHECK(out.unused.values[k + 1] >= out.unused.values[k] - 1e-12);
  }
}

TEST_CASE("brownian queue marginal and slope at moderate scale") {
  RngStream rng(88, 0);
  RngStream ra = rng.substream(1);
  RngStream rs = rng.substream(2);
  const double dt = 1e-3;
  const std::size_t steps = 2000000;  // horizon 2000
  auto a = BrownianGridPath::sample(0.0, 1.0, dt, steps, ra);
  auto s = BrownianGridPath::sample(1.0, 1.0, dt, steps, rs);
  RngStream rq = rng.substream(3);
  auto out = brownian_queue(a, s, rq);

  std::vector<double> samples;
  for (std::size_t k = 10000; k <= steps; k += 10000) {
    samples.push_back(out.queue[k]);
  }
  auto res = ks_test(samples, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(res.p_value > 1e-3);

  double slope = out.unused.values.back() /
                 (static_cast<double>(steps) * dt);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("brownian queue validates inputs") {
  RngStream rng(89, 0);
  auto a = BrownianGridPath::sample(1.0, 1.0, 0.01, 100, rng);
  auto s = BrownianGridPath::sample(0.5, 1.0, 0.01, 100, rng);
  CHECK_THROWS_AS(brownian_queue(a, s, rng), std::invalid_argument);
  auto s2 = BrownianGridPath::sample(2.0, 1.0, 0.02, 100, rng);
  CHECK_THROWS_AS(brownian_queue(a, s2, rng), std::invalid_argument);
}

TEST_CASE("brownian two-type fixed point") {
  RngStream rng(90, 0);
  BrownianTwoTypeOptions opts;
  auto report = brownian_two_type(0.0, 0.3, 1.0, 1e-3, 1000000, rng, opts);
  CHECK(report.overall_pass());
  CHECK_THROWS_AS(brownian_two_type(0.5, 0.0, 1.0, 1e-3, 1000, rng, opts),
                  std::invalid_argument);
}

TEST_CASE("heavy-traffic scaling of Bernoulli queues") {
  // arrival rate 1/2 - theta/sqrt(n), service rate 1/2 + theta/sqrt(n);
  // queue lengths rescaled by 4/sqrt(n) approach Exp(2 theta)
  const double theta = 0.5;
  auto ks_distance = [&](double n_scale, std::uint64_t seed) {
    RngStream rng(seed, 0);
    double p = 0.5 - theta / std::sqrt(n_scale);
    double q = 0.5 + theta / std::sqrt(n_scale);
    const std::size_t spacing =
        static_cast<std::size_t>(4.0 * n_scale);
    const std::size_t samples_wanted = 1500;
    const std::size_t slots = spacing * samples_wanted;
    double x = 0.0;
    std::vector<double> samples;
    for (std::size_t i = 0; i < slots; ++i) {
      double a = rng.next_bernoulli(p) ? 1.0 : 0.0;
      double s = rng.next_bernoulli(q) ? 1.0 : 0.0;
      x = std::max(x + a - s, 0.0);
      if (i % spacing == spacing - 1) {
        samples.push_back(x * 4.0 / std::sqrt(n_scale));
      }
    }
    double d = 0.0;
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      double f = 1.0 - std::exp(-2.0 * theta * samples[i]);
      d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
      d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
  };
  double d_small = ks_distance(100.0, 7);
  double d_large = ks_distance(10000.0, 8);
  CHECK(d_small < 0.25);
  CHECK(d_large < 0.06);
  CHECK(d_large < d_small);
}
