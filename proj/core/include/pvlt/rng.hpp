#pragma once

#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace pvlt {

/// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for member `index` of an ensemble keyed by `master_seed`:
///
///   stream_seed(m, i) = mix64(mix64(m ^ 0x6a09e667f3bcc909) + (i + 1) * 0x9e3779b97f4a7c15)
///
/// Results depend only on (m, i), never on which worker draws path i.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(master_seed ^ 0x6a09e667f3bcc909ULL) +
               (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Counter-based 64-bit generator: the k-th output is mix64(key + (k + 1) * gamma).
/// Satisfies UniformRandomBitGenerator.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  explicit CounterEngine(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  void discard(std::uint64_t n) noexcept { counter_ += n; }
  std::uint64_t counter() const noexcept { return counter_; }
  std::uint64_t key() const noexcept { return key_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard normal draws (boost ziggurat) from a CounterEngine stream.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) noexcept : engine_(seed) {}

  double operator()() { return dist_(engine_); }
  double uniform01();

  CounterEngine& engine() noexcept { return engine_; }

 private:
  CounterEngine engine_;
  boost::random::normal_distribution<double> dist_;
};

}  // namespace pvlt
