#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace mqlab {

/// Counter-based pseudo-random stream (splitmix64 applied to a keyed
/// counter). The n-th output is a pure function of (seed, stream_id, n),
/// so replications can run on disjoint streams without overlap and any
/// stream can be re-opened at will.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id), key_(derive_key(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  /// Independent stream derived from this one's identity.
  RngStream substream(std::uint64_t k) const {
    return RngStream(seed_, mix(stream_ ^ (0x9e3779b97f4a7c15ull + k)));
  }

  std::uint64_t next_u64() {
    return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

  double next_exp(double rate) {
    return -std::log1p(-next_unit()) / rate;
  }

  /// Standard normal via Box-Muller; draws two uniforms per call.
  double next_normal() {
    double u = 1.0 - next_unit();  // (0, 1]
    double v = next_unit();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(6.283185307179586476925286766559 * v);
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // multiply-shift; bias is negligible for n << 2^64
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  static std::string generator_name() { return "splitmix64-counter"; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix(mix(seed ^ 0x8e2ab5297c1d4f6bull) + stream);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mqlab
