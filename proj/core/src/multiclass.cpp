#include "mqlab/multiclass.hpp"

#include <stdexcept>

namespace mqlab {

MulticlassWorkSequence::MulticlassWorkSequence(
    std::int64_t start, std::vector<std::vector<Work>> per_class)
    : start_(start), per_class_(std::move(per_class)) {
  if (per_class_.empty()) {
    throw std::invalid_argument("MulticlassWorkSequence: need >= 1 class");
  }
  const std::size_t len = per_class_.front().size();
  for (const auto& row : per_class_) {
    if (row.size() != len) {
      throw std::invalid_argument(
          "MulticlassWorkSequence: classes must share the window");
    }
    for (Work v : row) {
      if (v > kMaxSlotWork) {
        throw std::invalid_argument(
            "MulticlassWorkSequence: slot value exceeds 2^32");
      }
    }
  }
}

MulticlassWorkSequence MulticlassWorkSequence::zeros(std::int64_t start,
                                                     std::size_t length,
                                                     std::size_t num_classes) {
  return MulticlassWorkSequence(
      start, std::vector<std::vector<Work>>(num_classes,
                                            std::vector<Work>(length, 0)));
}

Work MulticlassWorkSequence::at(std::size_t cls, std::int64_t slot) const {
  if (cls < 1 || cls > num_classes()) {
    throw std::out_of_range("MulticlassWorkSequence: class out of range");
  }
  if (slot < start() || slot >= end()) {
    throw std::out_of_range("MulticlassWorkSequence: slot outside window");
  }
  return per_class_[cls - 1][static_cast<std::size_t>(slot - start_)];
}

Work& MulticlassWorkSequence::at(std::size_t cls, std::int64_t slot) {
  if (cls < 1 || cls > num_classes()) {
    throw std::out_of_range("MulticlassWorkSequence: class out of range");
  }
  if (slot < start() || slot >= end()) {
    throw std::out_of_range("MulticlassWorkSequence: slot outside window");
  }
  return per_class_[cls - 1][static_cast<std::size_t>(slot - start_)];
}

WorkSequence MulticlassWorkSequence::class_sequence(std::size_t cls) const {
  if (cls < 1 || cls > num_classes()) {
    throw std::out_of_range("MulticlassWorkSequence: class out of range");
  }
  return WorkSequence(start_, per_class_[cls - 1]);
}

WorkSequence MulticlassWorkSequence::cumulative(std::size_t r) const {
  if (r < 1 || r > num_classes()) {
    throw std::out_of_range("MulticlassWorkSequence: class out of range");
  }
  std::vector<Work> sum(length(), 0);
  for (std::size_t c = 0; c < r; ++c) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += per_class_[c][i];
  }
  return WorkSequence(start_, std::move(sum));
}

void MulticlassInitialCondition::validate(std::size_t num_classes) const {
  if (cumulative_contents.size() != num_classes) {
    throw std::invalid_argument(
        "MulticlassInitialCondition: one cumulative content per class");
  }
  for (std::size_t i = 1; i < cumulative_contents.size(); ++i) {
    if (cumulative_contents[i] < cumulative_contents[i - 1]) {
      throw std::invalid_argument(
          "MulticlassInitialCondition: cumulative contents must be "
          "nondecreasing");
    }
  }
}

InitialCondition MulticlassInitialCondition::for_class(std::size_t r) const {
  if (saturated_top && r == cumulative_contents.size()) {
    return InitialCondition::saturated();
  }
  return InitialCondition::finite(cumulative_contents[r - 1]);
}

MulticlassQueuePath run_multiclass(const MulticlassWorkSequence& arrivals,
                                   const WorkSequence& service,
                                   const MulticlassInitialCondition& init) {
  const std::size_t m = arrivals.num_classes();
  init.validate(m);
  if (service.start() != arrivals.start() ||
      service.size() != arrivals.length()) {
    throw std::invalid_argument("run_multiclass: window mismatch");
  }

  MulticlassQueuePath out;
  out.cumulative_contents.resize(m);
  std::vector<std::vector<Work>> dep(m,
                                     std::vector<Work>(arrivals.length(), 0));

  WorkSequence prev_dep = WorkSequence::zeros(arrivals.start(),
                                              arrivals.length());
  for (std::size_t r = 1; r <= m; ++r) {
    QueuePath path =
        run_queue(arrivals.cumulative(r), service, init.for_class(r));
    // per-class departures: D^{=r} = D^{<=r} - D^{<=r-1}
    for (std::size_t i = 0; i < arrivals.length(); ++i) {
      const Work lo = prev_dep.values()[i];
      const Work hi = path.departures.values()[i];
      if (hi < lo) {
        throw std::logic_error("run_multiclass: cumulative departures "
                               "decreased across classes");
      }
      dep[r - 1][i] = hi - lo;
    }
    out.cumulative_contents[r - 1] = path.contents;
    prev_dep = path.departures;
    if (r == m) {
      std::vector<Work> unused(arrivals.length());
      for (std::size_t i = 0; i < arrivals.length(); ++i) {
        unused[i] = service.values()[i] - path.departures.values()[i];
      }
      out.unused = WorkSequence(arrivals.start(), std::move(unused));
    }
  }
  out.departures = MulticlassWorkSequence(arrivals.start(), std::move(dep));
  return out;
}

MulticlassWorkSequence restrict_classes(const MulticlassWorkSequence& arrivals,
                                        std::size_t r) {
  if (r < 1 || r > arrivals.num_classes()) {
    throw std::out_of_range("restrict_classes: r out of range");
  }
  std::vector<std::vector<Work>> rows(arrivals.raw().begin(),
                                      arrivals.raw().begin() + r);
  return MulticlassWorkSequence(arrivals.start(), std::move(rows));
}

MulticlassWorkSequence relabel_unused_as_class(
    const MulticlassQueuePath& path) {
  std::vector<std::vector<Work>> rows = path.departures.raw();
  rows.emplace_back(path.unused.values().begin(), path.unused.values().end());
  return MulticlassWorkSequence(path.departures.start(), std::move(rows));
}

MulticlassWorkSequence MulticlassWorkSequence::slice(std::int64_t from,
                                                     std::int64_t to) const {
  if (from < start() || to > end() || from > to) {
    throw std::out_of_range("MulticlassWorkSequence::slice: bad range");
  }
  std::vector<std::vector<Work>> rows;
  rows.reserve(per_class_.size());
  for (const auto& row : per_class_) {
    rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(from - start_),
                      row.begin() + static_cast<std::ptrdiff_t>(to - start_));
  }
  return MulticlassWorkSequence(from, std::move(rows));
}

std::vector<int> multiclass_slot_labels(const MulticlassWorkSequence& seq,
                                        Work cap) {
  const int k = static_cast<int>(cap) + 1;
  std::vector<int> labels(seq.length(), 0);
  for (std::size_t i = 0; i < seq.length(); ++i) {
    int code = 0;
    for (std::size_t c = 0; c < seq.num_classes(); ++c) {
      int v = static_cast<int>(std::min<Work>(seq.raw()[c][i], cap));
      code = code * k + v;
    }
    labels[i] = code;
  }
  return labels;
}

int multiclass_label_alphabet(std::size_t num_classes, Work cap) {
  int k = static_cast<int>(cap) + 1;
  int a = 1;
  for (std::size_t c = 0; c < num_classes; ++c) a *= k;
  return a;
}

MulticlassWorkSequence stack_classes(const MulticlassWorkSequence& low,
                                     const MulticlassWorkSequence& high) {
  if (low.start() != high.start() || low.length() != high.length()) {
    throw std::invalid_argument("stack_classes: window mismatch");
  }
  std::vector<std::vector<Work>> rows = low.raw();
  rows.insert(rows.end(), high.raw().begin(), high.raw().end());
  return MulticlassWorkSequence(low.start(), std::move(rows));
}

}  // namespace mqlab
