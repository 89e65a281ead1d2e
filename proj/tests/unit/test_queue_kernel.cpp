#include "doctest.h"
#include "mqlab/queue_kernel.hpp"
#include "mqlab/rng.hpp"

#include <vector>

using namespace mqlab;

namespace {

WorkSequence random_seq(RngStream& rng, std::int64_t start, std::size_t len,
                        Work vmax) {
  std::vector<Work> v(len);
  for (auto& x : v) x = rng.next_below(vmax + 1);
  return WorkSequence(start, std::move(v));
}

}  // namespace

TEST_CASE("run_queue single-slot cases") {
  // seven waiting, five units of service
  auto p = run_queue(WorkSequence(0, {0}), WorkSequence(0, {5}),
                     InitialCondition::finite(7));
  CHECK(p.departures.at(0) == 5);
  CHECK(p.unused.at(0) == 0);
  CHECK(p.contents[1] == ExtWork(2));

  // empty queue, all service unused
  p = run_queue(WorkSequence(0, {0}), WorkSequence(0, {3}),
                InitialCondition::empty());
  CHECK(p.departures.at(0) == 0);
  CHECK(p.unused.at(0) == 3);
  CHECK(p.contents[1] == ExtWork(0));

  // service exceeds content
  p = run_queue(WorkSequence(0, {3}), WorkSequence(0, {10}),
                InitialCondition::finite(2));
  CHECK(p.departures.at(0) == 5);
  CHECK(p.unused.at(0) == 5);
  CHECK(p.contents[1] == ExtWork(0));
}

TEST_CASE("run_queue rejects window mismatch") {
  CHECK_THROWS_AS(run_queue(WorkSequence(0, {1}), WorkSequence(1, {1}),
                            InitialCondition::empty()),
                  std::invalid_argument);
}

TEST_CASE("sup formula on a short window") {
  WorkSequence a(0, {3, 0});
  WorkSequence s(0, {1, 1});
  CHECK(queue_length_sup(a, s, 0) == 0);
  CHECK(queue_length_sup(a, s, 1) == 2);
  CHECK(queue_length_sup(a, s, 2) == 1);
}

TEST_CASE("sup formula equals the recursion on random windows") {
  RngStream rng(2024, 0);
  for (int inst = 0; inst < 10000; ++inst) {
    std::size_t len = 1 + rng.next_below(64);
    std::int64_t start = static_cast<std::int64_t>(rng.next_below(20)) - 10;
    WorkSequence a = random_seq(rng, start, len, 8);
    WorkSequence s = random_seq(rng, start, len, 8);
    QueuePath p = run_queue(a, s, InitialCondition::empty());
    for (std::int64_t n = start; n <= a.end(); ++n) {
      CHECK(p.contents[static_cast<std::size_t>(n - start)] ==
            ExtWork(queue_length_sup(a, s, n)));
    }
  }
}

TEST_CASE("conservation and split identities hold slotwise") {
  RngStream rng(5, 0);
  for (int inst = 0; inst < 2000; ++inst) {
    std::size_t len = 1 + rng.next_below(40);
    WorkSequence a = random_seq(rng, 0, len, 8);
    WorkSequence s = random_seq(rng, 0, len, 8);
    Work x0 = rng.next_below(5);
    QueuePath p = run_queue(a, s, InitialCondition::finite(x0));
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(p.departures.values()[i] + p.unused.values()[i] ==
            s.values()[i]);
      CHECK(p.contents[i + 1].value() ==
            p.contents[i].value() + a.values()[i] - p.departures.values()[i]);
    }
  }
}

TEST_CASE("all-zero arrivals keep the queue empty") {
  WorkSequence a = WorkSequence::zeros(0, 16);
  RngStream rng(3, 0);
  WorkSequence s = random_seq(rng, 0, 16, 5);
  QueuePath p = run_queue(a, s, InitialCondition::empty());
  for (const auto& x : p.contents) CHECK(x == ExtWork(0));
}

TEST_CASE("A equal to S pathwise keeps the empty queue at zero") {
  RngStream rng(4, 0);
  WorkSequence a = random_seq(rng, 0, 32, 6);
  QueuePath p = run_queue(a, a, InitialCondition::empty());
  for (const auto& x : p.contents) CHECK(x == ExtWork(0));
}

TEST_CASE("tandem chains departures at the same slot") {
  WorkSequence a(0, {2, 0});
  std::vector<WorkSequence> svc = {WorkSequence(0, {1, 1}),
                                   WorkSequence(0, {1, 1})};
  auto stages = tandem(a, svc, {InitialCondition::empty(),
                                InitialCondition::empty()});
  CHECK(stages.size() == 2);
  CHECK(stages[1].departures == WorkSequence(0, {1, 1}));

  // single stage reduces to run_queue
  auto one = tandem(a, {svc[0]}, {InitialCondition::empty()});
  auto direct = run_queue(a, svc[0], InitialCondition::empty());
  CHECK(one[0].departures == direct.departures);

  // zero services block everything
  auto blocked = tandem(a, {WorkSequence::zeros(0, 2)},
                        {InitialCondition::empty()});
  CHECK(blocked[0].departures == WorkSequence::zeros(0, 2));
  CHECK(blocked[0].contents[2] == ExtWork(2));
}

TEST_CASE("tandem rejects an empty service list") {
  CHECK_THROWS_AS(tandem(WorkSequence(0, {1}), {}, {}),
                  std::invalid_argument);
}

TEST_CASE("variational formula on the worked example") {
  WorkSequence a(0, {2, 0});
  WorkSequence s1(0, {1, 1});
  WorkSequence s2(0, {1, 1});
  CHECK(variational_departures(a, s1, s2, 2) == 2);

  // no work, no departures
  CHECK(variational_departures(WorkSequence::zeros(0, 4),
                               WorkSequence(0, {2, 2, 2, 2}),
                               WorkSequence(0, {2, 2, 2, 2}), 4) == 0);

  // first server blocks everything
  CHECK(variational_departures(WorkSequence(0, {5, 5}),
                               WorkSequence::zeros(0, 2),
                               WorkSequence(0, {9, 9}), 2) == 0);
}

TEST_CASE("variational formula matches simulated tandems") {
  RngStream rng(77, 0);
  for (int inst = 0; inst < 2000; ++inst) {
    std::size_t len = 1 + rng.next_below(50);
    WorkSequence a = random_seq(rng, 0, len, 6);
    WorkSequence s1 = random_seq(rng, 0, len, 6);
    WorkSequence s2 = random_seq(rng, 0, len, 6);
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.next_below(len));
    auto stages = tandem(a, {s1, s2}, {InitialCondition::empty(),
                                       InitialCondition::empty()});
    Work simulated =
        static_cast<Work>(stages[1].departures.sum(0, t));
    CHECK(variational_departures(a, s1, s2, t) == simulated);
  }
}

TEST_CASE("variational formula enforces its preconditions") {
  WorkSequence a(-2, {1, 0, 2, 0});
  WorkSequence s(-2, {1, 1, 1, 1});
  CHECK_THROWS_AS(variational_departures(a, s, s, 2), std::invalid_argument);
  CHECK_THROWS_AS(variational_departures(WorkSequence(0, {1}), s, s, 1),
                  std::invalid_argument);
}

TEST_CASE("truncate_before") {
  WorkSequence a(-1, {1, 2, 3});
  CHECK(truncate_before(a, 1) == a);                       // window start
  CHECK(truncate_before(a, -5) == WorkSequence(-1, {0, 0, 0}));
  CHECK(truncate_before(a, 0) == WorkSequence(-1, {0, 2, 3}));
}

TEST_CASE("truncated tandems stabilize to the untruncated value") {
  RngStream rng(31, 0);
  for (int inst = 0; inst < 200; ++inst) {
    std::size_t len = 20 + rng.next_below(30);
    std::int64_t start = -static_cast<std::int64_t>(len) / 2;
    WorkSequence a = random_seq(rng, start, len, 5);
    WorkSequence s1 = random_seq(rng, start, len, 5);
    WorkSequence s2 = random_seq(rng, start, len, 5);
    auto d2_at = [&](const WorkSequence& arr, std::int64_t n) {
      auto st = tandem(arr, {s1, s2}, {InitialCondition::empty(),
                                       InitialCondition::empty()});
      return st[1].departures.at(n);
    };
    std::int64_t probe = a.end() - 1;
    Work untruncated = d2_at(a, probe);
    Work prev = d2_at(truncate_before(a, 0), probe);
    std::int64_t s = 1;
    while (true) {
      Work cur = d2_at(truncate_before(a, s), probe);
      if (cur == prev) break;
      prev = cur;
      ++s;
    }
    CHECK(d2_at(truncate_before(a, 2 * s), probe) == prev);
    CHECK(d2_at(truncate_before(a, 4 * s), probe) == prev);
    CHECK(prev == untruncated);
  }
}

TEST_CASE("saturated path uses every service") {
  WorkSequence s(0, {5, 0, 2});
  QueuePath p = saturated_path(s);
  CHECK(p.departures == s);
  CHECK(p.unused == WorkSequence::zeros(0, 3));
  for (const auto& x : p.contents) CHECK(x.is_infinite());

  QueuePath zero = saturated_path(WorkSequence::zeros(0, 4));
  CHECK(zero.departures == WorkSequence::zeros(0, 4));
}

TEST_CASE("run_queue with saturated init matches saturated_path") {
  RngStream rng(8, 0);
  WorkSequence a = random_seq(rng, 0, 20, 4);
  WorkSequence s = random_seq(rng, 0, 20, 4);
  QueuePath p = run_queue(a, s, InitialCondition::saturated());
  CHECK(p.departures == s);
  CHECK(p.unused == WorkSequence::zeros(0, 20));
  CHECK(p.contents.back().is_infinite());
}

TEST_CASE("an extra arrival never decreases cumulative departures") {
  RngStream rng(11, 0);
  for (int inst = 0; inst < 1000; ++inst) {
    std::size_t len = 1 + rng.next_below(40);
    WorkSequence a = random_seq(rng, 0, len, 6);
    WorkSequence s = random_seq(rng, 0, len, 6);
    WorkSequence bumped = a;
    bumped.at(static_cast<std::int64_t>(rng.next_below(len))) += 1;
    auto base = run_queue(a, s, InitialCondition::empty());
    auto more = run_queue(bumped, s, InitialCondition::empty());
    WideSum cb = 0, cm = 0;
    for (std::size_t i = 0; i < len; ++i) {
      cb += base.departures.values()[i];
      cm += more.departures.values()[i];
      CHECK(cm >= cb);
    }
  }
}

TEST_CASE("per-slot cap is enforced") {
  std::vector<Work> v = {kMaxSlotWork + 1};
  CHECK_THROWS_AS(WorkSequence(0, std::move(v)), std::invalid_argument);
}

TEST_CASE("burn_in_slots floors at 1000") {
  CHECK(burn_in_slots(0.2, 0.3) == 1000);
  CHECK(burn_in_slots(0.0, 0.001) == 10000);
  CHECK(burn_in_slots(0.5, 0.5) == 1000);
}
