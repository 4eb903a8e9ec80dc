#include "rasym/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rasym {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  for (int v = 0; v < n(); ++v) {
    if (mapping_[v] != v) support_.push_back(v);
  }
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw DomainError("Permutation: negative size");
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  return Permutation(std::move(mapping));
}

Permutation Permutation::from_mapping(std::vector<int> mapping) {
  const int n = static_cast<int>(mapping.size());
  std::vector<bool> seen(n, false);
  for (int image : mapping) {
    if (image < 0 || image >= n || seen[image]) {
      throw DomainError("Permutation: mapping is not a bijection on [0, n)");
    }
    seen[image] = true;
  }
  return Permutation(std::move(mapping));
}

Permutation Permutation::transposition(int n, int u, int v) {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
    throw DomainError("transposition: need distinct labels in [0, n)");
  }
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  std::swap(mapping[u], mapping[v]);
  return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
  std::vector<int> mapping(mapping_.size());
  for (int v = 0; v < n(); ++v) mapping[mapping_[v]] = v;
  return Permutation(std::move(mapping));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (n() != other.n()) throw DomainError("compose: dimension mismatch");
  std::vector<int> mapping(mapping_.size());
  for (int v = 0; v < n(); ++v) mapping[v] = mapping_[other.mapping_[v]];
  return Permutation(std::move(mapping));
}

int Permutation::pair_fixpoints() const {
  int count = 0;
  for (int v : support_) {
    int image = mapping_[v];
    if (image > v && mapping_[image] == v) ++count;
  }
  return count;
}

std::string Permutation::cycle_notation() const {
  if (support_.empty()) return "()";
  std::ostringstream out;
  std::vector<bool> done(mapping_.size(), false);
  for (int start : support_) {
    if (done[start]) continue;
    out << '(' << start;
    done[start] = true;
    for (int v = mapping_[start]; v != start; v = mapping_[v]) {
      out << ' ' << v;
      done[v] = true;
    }
    out << ')';
  }
  return out.str();
}

BigInt derangement_count(int k) {
  if (k < 0) throw DomainError("derangement_count: negative k");
  if (k == 0) return 1;
  BigInt prev2 = 1;  // D(0)
  BigInt prev1 = 0;  // D(1)
  if (k == 1) return prev1;
  BigInt current = 0;
  for (int i = 2; i <= k; ++i) {
    current = BigInt(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = current;
  }
  return current;
}

BigInt count_k_perms(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("count_k_perms: need 0 <= k <= n");
  BigInt binom = 1;
  for (int i = 1; i <= k; ++i) {
    binom *= (n - k + i);
    binom /= i;
  }
  return binom * derangement_count(k);
}

std::vector<Permutation> enumerate_k_perms(int n, int k) {
  std::vector<Permutation> result;
  for_each_k_perm(n, k, [&](std::span<const int> support, std::span<const int> images) {
    std::vector<int> mapping(n);
    std::iota(mapping.begin(), mapping.end(), 0);
    for (std::size_t i = 0; i < support.size(); ++i) mapping[support[i]] = images[i];
    result.push_back(Permutation::from_mapping(std::move(mapping)));
    return true;
  });
  return result;
}

Permutation sample_k_perm(int n, int k, Rng& rng) {
  if (k < 2 || k > n) throw DomainError("sample_k_perm: need 2 <= k <= n");
  std::vector<int> support = rng.sample_subset(n, k);
  std::vector<int> images = support;
  for (;;) {
    rng.shuffle(images);
    bool deranged = true;
    for (int i = 0; i < k; ++i) {
      if (images[i] == support[i]) {
        deranged = false;
        break;
      }
    }
    if (deranged) break;
  }
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  for (int i = 0; i < k; ++i) mapping[support[i]] = images[i];
  return Permutation::from_mapping(std::move(mapping));
}

}  // namespace rasym
