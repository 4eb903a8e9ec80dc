#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rasym/errors.hpp"
#include "rasym/graph.hpp"
#include "rasym/rng.hpp"

namespace rasym {

using BigInt = boost::multiprecision::cpp_int;

// Bijection on [0, n) with cached support (the moved labels). The support
// size k is never 1, and the restriction to the support is a derangement.
class Permutation {
 public:
  static Permutation identity(int n);
  static Permutation from_mapping(std::vector<int> mapping);
  static Permutation transposition(int n, int u, int v);

  int n() const { return static_cast<int>(mapping_.size()); }
  int k() const { return static_cast<int>(support_.size()); }
  int operator()(int v) const { return mapping_[v]; }
  const std::vector<int>& mapping() const { return mapping_; }
  const std::vector<int>& support() const { return support_; }
  VertexSet support_set() const { return VertexSet(n(), support_); }
  bool is_identity() const { return support_.empty(); }

  Permutation inverse() const;
  // (a.compose(b))(v) = a(b(v))
  Permutation compose(const Permutation& other) const;

  // Number of unordered pairs {u,v} with pi(u)=v and pi(v)=u, i.e. 2-cycles.
  int pair_fixpoints() const;

  // "(0 3)(1 4 2)": cycles start at their smallest label and are listed in
  // ascending order of that label; the identity renders as "()".
  std::string cycle_notation() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.mapping_ == b.mapping_;
  }

 private:
  explicit Permutation(std::vector<int> mapping);

  std::vector<int> mapping_;
  std::vector<int> support_;  // sorted
};

// D(k): derangement count, D(0)=1, D(1)=0, D(k)=(k-1)(D(k-1)+D(k-2)).
BigInt derangement_count(int k);

// C(n,k) * D(k): number of permutations of [0,n) with support size exactly k.
BigInt count_k_perms(int n, int k);

namespace detail {

template <class F>
bool derangement_rec(std::span<const int> support, std::vector<int>& images,
                     std::vector<bool>& used, int pos, F&& f) {
  const int k = static_cast<int>(support.size());
  if (pos == k) return f(std::span<const int>(images));
  for (int j = 0; j < k; ++j) {
    if (used[j] || j == pos) continue;  // j == pos would fix support[pos]
    used[j] = true;
    images[pos] = support[j];
    if (!derangement_rec(support, images, used, pos + 1, f)) return false;
    used[j] = false;
  }
  return true;
}

// Derangements of the sorted set `support` in lexicographic image order, by
// recursive placement with fixed-point pruning. f(images) -> false stops.
template <class F>
bool for_each_derangement(std::span<const int> support, F&& f) {
  if (support.empty()) return f(std::span<const int>{});
  std::vector<int> images(support.size());
  std::vector<bool> used(support.size(), false);
  return derangement_rec(support, images, used, 0, f);
}

}  // namespace detail

// Every permutation of [0,n) with support size exactly k, each exactly once:
// supports in lexicographic subset order, derangements within a support in
// lexicographic image order (so the stream is deterministic and splittable
// by subset prefix). k=1 yields nothing. f(support, images) -> bool; return
// false to stop. Returns false iff the visitor stopped the stream.
template <class F>
bool for_each_k_perm(int n, int k, F&& f) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("for_each_k_perm: need 0 <= k <= n");
  }
  if (k == 1) return true;  // no permutation moves exactly one element
  if (k == 0) {
    return f(std::span<const int>{}, std::span<const int>{});
  }
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  for (;;) {
    std::span<const int> sup(subset);
    bool keep = detail::for_each_derangement(
        sup, [&](std::span<const int> images) { return f(sup, images); });
    if (!keep) return false;
    // next k-combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) return true;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

// Materialized variant for small spaces and tests.
std::vector<Permutation> enumerate_k_perms(int n, int k);

// Uniform over all C(n,k) * D(k) k-permutations: uniform k-subset, then a
// uniform derangement of it by rejection sampling of uniform permutations
// (acceptance probability tends to 1/e). Requires 2 <= k <= n.
Permutation sample_k_perm(int n, int k, Rng& rng);

}  // namespace rasym
