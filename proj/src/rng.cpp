#include "rasym/rng.hpp"

#include <algorithm>

#include "rasym/errors.hpp"

namespace rasym {

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view tag,
                          std::uint64_t index) {
  std::uint64_t k = mix(seed + 0x9e3779b97f4a7c15ULL);
  k = mix(k ^ fnv1a64(tag));
  return mix(k ^ index);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: bound must be positive");
  std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

std::vector<int> Rng::sample_subset(int n, int k) {
  if (k < 0 || k > n) throw DomainError("Rng::sample_subset: need 0 <= k <= n");
  std::vector<int> picked;
  picked.reserve(k);
  if (k <= n / 64) {
    // sparse: rejection over distinct draws, uniform over k-subsets
    while (static_cast<int>(picked.size()) < k) {
      const int v = static_cast<int>(below(static_cast<std::uint64_t>(n)));
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) {
        picked.push_back(v);
      }
    }
  } else {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      std::size_t j = i + below(static_cast<std::uint64_t>(n - i));
      std::swap(pool[i], pool[j]);
      picked.push_back(pool[i]);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace rasym
