#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rasym/graph.hpp"
#include "rasym/permutation.hpp"
#include "rasym/rational.hpp"

namespace rasym {

// Upper bound on evaluated permutations for the exact searches. Covers every
// k for n <= 11, and k <= 3 up to n around 300.
inline constexpr unsigned long long kDefaultExactBudget = 100'000'000ULL;

// Per-k robustness record: delta = min over k-permutations of
// dist_perm(G, pi) * n / (k * m), with a witness attaining it.
struct DeltaEntry {
  int k = 0;
  Rational delta;
  long long dist = 0;  // the minimal dist_perm value
  Permutation witness = Permutation::identity(0);
  bool exact = false;  // full enumeration vs heuristic upper bound
};

struct AsymmetryProfile {
  int n = 0;
  long long m = 0;
  std::uint64_t graph_hash = 0;
  std::vector<DeltaEntry> entries;  // ascending k, k in {2..n}

  Rational overall_delta() const;
  bool all_exact() const;
  const DeltaEntry* entry(int k) const;

  nlohmann::ordered_json to_json() const;
};

// Multi-restart simulated annealing over k-permutations. Moves: swap one
// support vertex against a non-support vertex (re-wiring the displaced
// images), swap two images within the support, rotate three images within
// the support; every move preserves support size and derangedness.
// Deterministic given seed, independent of jobs.
struct SearchParams {
  int restarts = 32;
  int steps = 20000;
  double cooling = 0.999;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Minimum over ALL k-permutations, ties broken by enumeration order.
// Refuses with the exact count when C(n,k)*D(k) exceeds the budget.
DeltaEntry exact_delta_k(const Graph& g, int k,
                         unsigned long long budget = kDefaultExactBudget);

// Same result as exact_delta_k(g, 2), in O(n^2) adjacency-row xor popcounts:
// dist_perm(G, swap(u,v)) = popcount(row(u) xor row(v)) - 2*[uv in E].
DeltaEntry exact_delta_2(const Graph& g);

// Heuristic upper bound on delta(k); the bound is achieved by the returned
// witness, so it can refute but never certify.
DeltaEntry heuristic_delta_k(const Graph& g, int k, const SearchParams& params = {});

// Exact entries wherever the per-k enumeration fits the budget, heuristic
// entries elsewhere. k=1 is absent: no permutation moves exactly one label.
AsymmetryProfile exact_profile(const Graph& g,
                               unsigned long long budget = kDefaultExactBudget,
                               const SearchParams& params = {});

enum class AsymmetryVerdict {
  certified,    // every entry >= delta and every entry exact
  not_refuted,  // every entry >= delta but some entries are heuristic
  refuted,      // some entry < delta (valid at any exactness)
};

std::string to_string(AsymmetryVerdict v);

AsymmetryVerdict is_delta_asymmetric(const Graph& g, const Rational& delta,
                                     const AsymmetryProfile& profile);

// First automorphism with support >= 2 in (k ascending, enumeration) order,
// or nullopt if the graph is asymmetric. A small-n certification tool: it
// refuses when n! exceeds the budget.
std::optional<Permutation> has_nontrivial_automorphism(
    const Graph& g, unsigned long long budget = kDefaultExactBudget);

}  // namespace rasym
