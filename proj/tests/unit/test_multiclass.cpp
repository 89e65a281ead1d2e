#include "doctest.h"
#include "mqlab/multiclass.hpp"
#include "mqlab/rng.hpp"

using namespace mqlab;

namespace {

MulticlassWorkSequence random_multiclass(RngStream& rng, std::int64_t start,
                                         std::size_t len, std::size_t m,
                                         Work vmax) {
  std::vector<std::vector<Work>> rows(m, std::vector<Work>(len));
  for (auto& row : rows) {
    for (auto& v : row) v = rng.next_below(vmax + 1);
  }
  return MulticlassWorkSequence(start, std::move(rows));
}

WorkSequence random_seq(RngStream& rng, std::int64_t start, std::size_t len,
                        Work vmax) {
  std::vector<Work> v(len);
  for (auto& x : v) x = rng.next_below(vmax + 1);
  return WorkSequence(start, std::move(v));
}

}  // namespace

TEST_CASE("priority service splits the worked example") {
  // 3 first-class, 1 third-class, 3 fourth-class waiting; 5 units of
  // service; departures (3, 0, 1, 1), remaining (0, 0, 0, 2)
  auto arrivals = MulticlassWorkSequence::zeros(0, 1, 4);
  WorkSequence service(0, {5});
  MulticlassInitialCondition init;
  init.cumulative_contents = {3, 3, 4, 7};
  auto path = run_multiclass(arrivals, service, init);
  CHECK(path.departures.at(1, 0) == 3);
  CHECK(path.departures.at(2, 0) == 0);
  CHECK(path.departures.at(3, 0) == 1);
  CHECK(path.departures.at(4, 0) == 1);
  CHECK(path.unused.at(0) == 0);
  CHECK(path.cumulative_contents[3][1] == ExtWork(2));  // X^{<=4}(1)
  CHECK(path.cumulative_contents[2][1] == ExtWork(0));
}

TEST_CASE("single class reduces to the scalar queue") {
  RngStream rng(21, 0);
  WorkSequence a = random_seq(rng, 0, 50, 6);
  WorkSequence s = random_seq(rng, 0, 50, 6);
  std::vector<std::vector<Work>> rows;
  rows.emplace_back(a.values().begin(), a.values().end());
  auto path = run_multiclass(MulticlassWorkSequence(0, std::move(rows)), s,
                             MulticlassInitialCondition::empty(1));
  auto direct = run_queue(a, s, InitialCondition::empty());
  CHECK(path.departures.class_sequence(1) == direct.departures);
  CHECK(path.unused == direct.unused);
}

TEST_CASE("idle service is all unused") {
  auto arrivals = MulticlassWorkSequence::zeros(0, 1, 3);
  auto path = run_multiclass(arrivals, WorkSequence(0, {4}),
                             MulticlassInitialCondition::empty(3));
  CHECK(path.unused.at(0) == 4);
  for (std::size_t c = 1; c <= 3; ++c) CHECK(path.departures.at(c, 0) == 0);
}

TEST_CASE("coupling identity against standalone runs") {
  RngStream rng(22, 0);
  for (int inst = 0; inst < 2000; ++inst) {
    std::size_t m = 1 + rng.next_below(4);
    std::size_t len = 1 + rng.next_below(64);
    auto arrivals = random_multiclass(rng, 0, len, m, 3);
    WorkSequence service = random_seq(rng, 0, len, 5);
    auto path = run_multiclass(arrivals, service,
                               MulticlassInitialCondition::empty(m));
    for (std::size_t r = 1; r <= m; ++r) {
      auto standalone = run_queue(arrivals.cumulative(r), service,
                                  InitialCondition::empty());
      CHECK(path.cumulative_departures(r) == standalone.departures);
      CHECK(path.cumulative_contents[r - 1] == standalone.contents);
    }
    // split identity: departures of all classes plus unused equal service
    for (std::size_t i = 0; i < len; ++i) {
      Work total = path.unused.values()[i];
      for (std::size_t r = 1; r <= m; ++r) {
        total += path.departures.raw()[r - 1][i];
      }
      CHECK(total == service.values()[i]);
    }
  }
}

TEST_CASE("restriction commutes with the run") {
  RngStream rng(23, 0);
  for (int inst = 0; inst < 500; ++inst) {
    std::size_t m = 2 + rng.next_below(3);
    std::size_t len = 1 + rng.next_below(48);
    auto arrivals = random_multiclass(rng, 0, len, m, 3);
    WorkSequence service = random_seq(rng, 0, len, 5);
    std::size_t r = 1 + rng.next_below(m);

    auto full = run_multiclass(arrivals, service,
                               MulticlassInitialCondition::empty(m));
    auto restricted = run_multiclass(restrict_classes(arrivals, r), service,
                                     MulticlassInitialCondition::empty(r));
    for (std::size_t c = 1; c <= r; ++c) {
      CHECK(full.departures.class_sequence(c) ==
            restricted.departures.class_sequence(c));
    }
  }
}

TEST_CASE("restrict_classes r = m is the identity") {
  RngStream rng(24, 0);
  auto arrivals = random_multiclass(rng, -3, 20, 3, 2);
  CHECK(restrict_classes(arrivals, 3) == arrivals);
  CHECK_THROWS_AS(restrict_classes(arrivals, 4), std::out_of_range);
  CHECK_THROWS_AS(restrict_classes(arrivals, 0), std::out_of_range);
}

TEST_CASE("merging adjacent classes commutes with the run") {
  RngStream rng(25, 0);
  for (int inst = 0; inst < 300; ++inst) {
    std::size_t len = 1 + rng.next_below(48);
    auto arrivals = random_multiclass(rng, 0, len, 3, 3);
    WorkSequence service = random_seq(rng, 0, len, 6);
    std::size_t r = 1 + rng.next_below(2);  // merge classes r and r+1

    auto merged_rows = arrivals.raw();
    for (std::size_t i = 0; i < len; ++i) {
      merged_rows[r - 1][i] += merged_rows[r][i];
    }
    merged_rows.erase(merged_rows.begin() + static_cast<std::ptrdiff_t>(r));
    auto merged = MulticlassWorkSequence(0, std::move(merged_rows));

    auto full = run_multiclass(arrivals, service,
                               MulticlassInitialCondition::empty(3));
    auto two = run_multiclass(merged, service,
                              MulticlassInitialCondition::empty(2));
    for (std::size_t i = 0; i < len; ++i) {
      Work merged_dep = full.departures.raw()[r - 1][i] +
                        full.departures.raw()[r][i];
      CHECK(two.departures.raw()[r - 1][i] == merged_dep);
    }
  }
}

TEST_CASE("relabel_unused_as_class appends the unused stream") {
  RngStream rng(26, 0);
  auto arrivals = random_multiclass(rng, 0, 30, 2, 2);
  WorkSequence service = random_seq(rng, 0, 30, 4);
  auto path = run_multiclass(arrivals, service,
                             MulticlassInitialCondition::empty(2));
  auto extended = relabel_unused_as_class(path);
  CHECK(extended.num_classes() == 3);
  CHECK(extended.class_sequence(3) == path.unused);

  // saturated single-class path: second class identically zero
  auto sat = run_multiclass(
      restrict_classes(arrivals, 1), service,
      MulticlassInitialCondition::saturated(1));
  auto ext2 = relabel_unused_as_class(sat);
  CHECK(ext2.class_sequence(1) == service);
  CHECK(ext2.class_sequence(2) == WorkSequence::zeros(0, 30));
}

TEST_CASE("saturated top with finite lower classes") {
  RngStream rng(27, 0);
  auto arrivals = random_multiclass(rng, 0, 40, 3, 1);
  WorkSequence service = random_seq(rng, 0, 40, 3);
  auto path = run_multiclass(arrivals, service,
                             MulticlassInitialCondition::saturated(3));
  CHECK(path.departures.cumulative(3) == service);
  CHECK(path.unused == WorkSequence::zeros(0, 40));
  CHECK(path.cumulative_contents[2].front().is_infinite());
  CHECK(path.cumulative_contents[1].front().is_finite());
}

TEST_CASE("inconsistent cumulative inits are rejected") {
  auto arrivals = MulticlassWorkSequence::zeros(0, 4, 2);
  MulticlassInitialCondition bad;
  bad.cumulative_contents = {3, 2};
  CHECK_THROWS_AS(run_multiclass(arrivals, WorkSequence::zeros(0, 4), bad),
                  std::invalid_argument);
}

TEST_CASE("window mismatch is rejected") {
  auto arrivals = MulticlassWorkSequence::zeros(0, 4, 2);
  CHECK_THROWS_AS(run_multiclass(arrivals, WorkSequence::zeros(1, 4),
                                 MulticlassInitialCondition::empty(2)),
                  std::invalid_argument);
}

TEST_CASE("slot labels encode the class vector") {
  MulticlassWorkSequence seq(0, {{1, 0, 0}, {0, 0, 1}});
  auto labels = multiclass_slot_labels(seq, 1);
  CHECK(labels == std::vector<int>{2, 0, 1});
  CHECK(multiclass_label_alphabet(2, 1) == 4);
}
