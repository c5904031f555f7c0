#pragma once

// Counter-based generator: the k-th draw of a stream is a pure function of
// (seed, stream, k), so parallel sweeps stay reproducible.

#include <cstdint>

namespace hecke {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(splitmix64(seed ^ splitmix64(stream + 1))) {}

  std::uint64_t at(std::uint64_t k) const { return splitmix64(key_ + splitmix64(k)); }
  std::uint64_t next() { return at(counter_++); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hecke
