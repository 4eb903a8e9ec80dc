#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rasym {

// Counter-based 64-bit generator. The i-th output is
//   mix(key + i * 0x9e3779b97f4a7c15)
// where mix is the splitmix64 finalizer. Substream keys are derived from
// (seed, tag, index), so every consumer draws from an independently keyed
// stream and results do not depend on scheduling order. Self-consistency
// across runs is guaranteed; bit-equality with other implementations is not
// promised.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  static std::uint64_t derive(std::uint64_t seed, std::string_view tag,
                              std::uint64_t index = 0);

  static Rng stream(std::uint64_t seed, std::string_view tag,
                    std::uint64_t index = 0) {
    return Rng(derive(seed, tag, index));
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound), unbiased via rejection of the short tail.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return next_double() < p; }

  // k distinct values from [0, n), ascending, by partial Fisher-Yates.
  std::vector<int> sample_subset(int n, int k);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rasym
