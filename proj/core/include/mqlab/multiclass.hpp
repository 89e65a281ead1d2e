#pragma once

#include <cstdint>
#include <vector>

#include "mqlab/queue_kernel.hpp"
#include "mqlab/work_sequence.hpp"

namespace mqlab {

/// m per-class work sequences on one shared window. Class 1 has the
/// highest priority. Classes are 1-based throughout the API.
class MulticlassWorkSequence {
 public:
  MulticlassWorkSequence() = default;
  MulticlassWorkSequence(std::int64_t start,
                         std::vector<std::vector<Work>> per_class);

  static MulticlassWorkSequence zeros(std::int64_t start, std::size_t length,
                                      std::size_t num_classes);

  std::size_t num_classes() const { return per_class_.size(); }
  std::int64_t start() const { return start_; }
  std::int64_t end() const { return start_ + static_cast<std::int64_t>(length()); }
  std::size_t length() const {
    return per_class_.empty() ? 0 : per_class_.front().size();
  }

  Work at(std::size_t cls, std::int64_t slot) const;
  Work& at(std::size_t cls, std::int64_t slot);

  /// Single class as a WorkSequence (copy).
  WorkSequence class_sequence(std::size_t cls) const;

  /// Classes 1..r summed slotwise: the A^{<=r} view.
  WorkSequence cumulative(std::size_t r) const;

  /// Total over all classes per slot.
  WorkSequence combined() const { return cumulative(num_classes()); }

  const std::vector<std::vector<Work>>& raw() const { return per_class_; }

  /// Copy of the sub-window [from, to).
  MulticlassWorkSequence slice(std::int64_t from, std::int64_t to) const;

  friend bool operator==(const MulticlassWorkSequence& a,
                         const MulticlassWorkSequence& b) {
    return a.start_ == b.start_ && a.per_class_ == b.per_class_;
  }

 private:
  std::int64_t start_ = 0;
  std::vector<std::vector<Work>> per_class_;  // [class-1][slot]
};

/// Per-class left-edge state, specified through the cumulative contents
/// x^{<=r} (nondecreasing in r) so that no unrepresentable split can be
/// requested. saturated_top puts X^{<=m} = infinity with all lower
/// cumulative contents finite, the Claim-2 configuration.
struct MulticlassInitialCondition {
  std::vector<Work> cumulative_contents;
  bool saturated_top = false;

  static MulticlassInitialCondition empty(std::size_t num_classes) {
    return {std::vector<Work>(num_classes, 0), false};
  }
  static MulticlassInitialCondition saturated(std::size_t num_classes) {
    return {std::vector<Work>(num_classes, 0), true};
  }

  void validate(std::size_t num_classes) const;
  InitialCondition for_class(std::size_t r) const;
};

/// Output of the m-class priority queue: per-class departures D^{=r},
/// per-class contents X^{=r} (finite rows), unused service U, plus the
/// cumulative paths the coupling construction runs on.
struct MulticlassQueuePath {
  MulticlassWorkSequence departures;
  std::vector<std::vector<ExtWork>> cumulative_contents;  // [class-1][edge]
  WorkSequence unused;

  std::size_t num_classes() const { return departures.num_classes(); }

  WorkSequence cumulative_departures(std::size_t r) const {
    return departures.cumulative(r);
  }
};

/// Priority queue via the cumulative coupling: for every r,
/// (X^{<=r}, D^{<=r}) is the single-class path of (A^{<=r}, S), and the
/// per-class outputs are the differences.
MulticlassQueuePath run_multiclass(const MulticlassWorkSequence& arrivals,
                                   const WorkSequence& service,
                                   const MulticlassInitialCondition& init);

/// Drop classes r+1..m.
MulticlassWorkSequence restrict_classes(const MulticlassWorkSequence& arrivals,
                                        std::size_t r);

/// (m+1)-class sequence: first m classes are the departures, class m+1
/// is the unused service.
MulticlassWorkSequence relabel_unused_as_class(const MulticlassQueuePath& path);

/// Merge two multiclass sequences into one window: classes of `low`
/// keep priority over classes of `high`.
MulticlassWorkSequence stack_classes(const MulticlassWorkSequence& low,
                                     const MulticlassWorkSequence& high);

/// Per-slot symbol over the full class vector, per-class values capped:
/// code = sum over classes of min(value, cap) in base (cap+1). In the
/// Bernoulli family with cap >= 1 this is a bijection onto
/// {empty, class 1, ..., class m}.
std::vector<int> multiclass_slot_labels(const MulticlassWorkSequence& seq,
                                        Work cap);

/// Alphabet size of multiclass_slot_labels: (cap+1)^m.
int multiclass_label_alphabet(std::size_t num_classes, Work cap);

}  // namespace mqlab
