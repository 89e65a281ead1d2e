#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace mqlab {

/// Per-slot work amount (customers served/arriving in one slot).
using Work = std::uint64_t;

/// Per-slot values above this are rejected; keeps every cumulative sum
/// representable in 128 bits at desk scale.
inline constexpr Work kMaxSlotWork = Work{1} << 32;

using WideSum = __int128;

/// A finite window of a process on Z: value at absolute slot n is
/// values()[n - start()]. Slots outside [start, end) are not represented.
class WorkSequence {
 public:
  WorkSequence() = default;

  WorkSequence(std::int64_t start, std::vector<Work> values)
      : start_(start), values_(std::move(values)) {
    for (Work v : values_) {
      if (v > kMaxSlotWork) {
        throw std::invalid_argument("WorkSequence: slot value exceeds 2^32");
      }
    }
  }

  static WorkSequence zeros(std::int64_t start, std::size_t length) {
    return WorkSequence(start, std::vector<Work>(length, 0));
  }

  std::int64_t start() const { return start_; }
  std::int64_t end() const {
    return start_ + static_cast<std::int64_t>(values_.size());
  }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool contains(std::int64_t slot) const {
    return slot >= start() && slot < end();
  }

  Work at(std::int64_t slot) const {
    if (!contains(slot)) {
      throw std::out_of_range("WorkSequence: slot outside window");
    }
    return values_[static_cast<std::size_t>(slot - start_)];
  }

  Work& at(std::int64_t slot) {
    if (!contains(slot)) {
      throw std::out_of_range("WorkSequence: slot outside window");
    }
    return values_[static_cast<std::size_t>(slot - start_)];
  }

  std::span<const Work> values() const { return values_; }
  std::vector<Work>& mutable_values() { return values_; }

  bool same_window(const WorkSequence& other) const {
    return start_ == other.start_ && values_.size() == other.values_.size();
  }

  /// Sum over slots [from, to), 128-bit accumulation.
  WideSum sum(std::int64_t from, std::int64_t to) const {
    if (from < start() || to > end() || from > to) {
      throw std::out_of_range("WorkSequence::sum: bad range");
    }
    WideSum s = 0;
    for (std::int64_t n = from; n < to; ++n) {
      s += static_cast<WideSum>(values_[static_cast<std::size_t>(n - start_)]);
    }
    return s;
  }

  WideSum total() const { return empty() ? 0 : sum(start(), end()); }

  /// Copy of the sub-window [from, to).
  WorkSequence slice(std::int64_t from, std::int64_t to) const {
    if (from < start() || to > end() || from > to) {
      throw std::out_of_range("WorkSequence::slice: bad range");
    }
    return WorkSequence(
        from, std::vector<Work>(
                  values_.begin() + static_cast<std::ptrdiff_t>(from - start_),
                  values_.begin() + static_cast<std::ptrdiff_t>(to - start_)));
  }

  friend bool operator==(const WorkSequence& a, const WorkSequence& b) {
    return a.start_ == b.start_ && a.values_ == b.values_;
  }

 private:
  std::int64_t start_ = 0;
  std::vector<Work> values_;
};

/// Queue length extended with the saturated value X = infinity (Lemma-1
/// regime). Infinity is an explicit sentinel, absorbing under addition.
class ExtWork {
 public:
  ExtWork() : finite_(true), value_(0) {}
  ExtWork(Work v) : finite_(true), value_(v) {}  // NOLINT(runtime/explicit)

  static ExtWork infinity() {
    ExtWork x;
    x.finite_ = false;
    x.value_ = 0;
    return x;
  }

  bool is_infinite() const { return !finite_; }
  bool is_finite() const { return finite_; }

  Work value() const {
    if (!finite_) throw std::domain_error("ExtWork: value() of infinity");
    return value_;
  }

  friend bool operator==(const ExtWork& a, const ExtWork& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }

 private:
  bool finite_;
  Work value_;
};

/// Left-edge state of a queue window: Empty (X = 0), Finite(x0), or
/// Saturated (X = infinity identically, every service used).
struct InitialCondition {
  enum class Kind { empty, finite, saturated };

  Kind kind = Kind::empty;
  Work x0 = 0;

  static InitialCondition empty() { return {Kind::empty, 0}; }
  static InitialCondition finite(Work x) { return {Kind::finite, x}; }
  static InitialCondition saturated() { return {Kind::saturated, 0}; }

  ExtWork initial_content() const {
    switch (kind) {
      case Kind::empty: return ExtWork(0);
      case Kind::finite: return ExtWork(x0);
      case Kind::saturated: return ExtWork::infinity();
    }
    throw std::logic_error("InitialCondition: bad kind");
  }
};

}  // namespace mqlab
