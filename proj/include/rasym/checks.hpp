#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rasym/asymmetry.hpp"
#include "rasym/generators.hpp"
#include "rasym/graph.hpp"
#include "rasym/rational.hpp"

namespace rasym {

enum class Verdict {
  pass,              // deterministic property holds
  fail,              // property violated (deterministic or sampled)
  statistical_pass,  // sampled estimate within tolerance
  inconclusive,      // the check could not decide (rare event, budget)
  skipped,           // degenerate inputs make the check vacuous
};

std::string to_string(Verdict v);

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  nlohmann::ordered_json stats;  // measured quantities, check-specific
  double tolerance = 0.0;        // sigma multiplier or slack in use
  long long samples = 0;
  std::uint64_t seed = 0;
  std::string note;

  bool failed() const { return verdict == Verdict::fail; }
  nlohmann::ordered_json to_json() const;
};

// |avgdeg - pn| <= slack * sqrt(pn). Skipped when pn = 0 (degenerate).
CheckReport check_avg_degree(const Graph& g, double p, int d, double slack = 5.0);

// max_common_neighbors(g) <= 2.
CheckReport check_common_neighbors(const Graph& g);

// No vertex set S with |S| <= size_limit induces more than 3|S| edges.
// Decided by (a) arithmetic for size_limit <= 7, (b) a sound common-neighbor
// certificate for size_limit <= 16, or (c) exhaustive connected-set
// enumeration, refusing (inconclusive) past node_budget visited sets.
CheckReport check_small_set_density(const Graph& g, int size_limit,
                                    long long node_budget = 10'000'000);

// Exhaustive search for a violating set, restricted to connected sets: a
// minimal violator is connected, because the edges of a disconnected set
// split across its components and some component already violates. Connected
// sets are enumerated once each by extension with an exclusion frontier.
// Returns the first violator in enumeration order, or nullopt if none.
// Throws BudgetError when more than node_budget sets get visited.
std::optional<std::vector<int>> find_small_dense_set(const Graph& g,
                                                     int size_limit,
                                                     long long node_budget,
                                                     long long* visited = nullptr);

// Sound certificate that no set of size <= size_limit (8 <= size_limit <= 16)
// induces more than 3|S| edges, from the pair common-neighbor profile alone.
// For |S| = s with e(S) >= 3s+1, double counting two-paths forces
//   sum over pairs in S of min(cn(x,y), s-2)  >=  15s + 12,
// while pairs with cn <= 2 contribute at most s(s-1) in total; so S must pack
// weight 15s + 12 - s(s-1) into pairs with cn >= 3 on s vertices. The
// certificate maximizes that packing exactly (per-component brute force plus
// a knapsack across components) and certifies when even the maximum falls
// short for every s. Returns false when it cannot certify (never "violator").
bool density_certificate(const Graph& g, int size_limit);

// Empirical mean of m_S over G_{n,p} samples with S = {0..k-1} against
// p(C(k,2) + k(n-k)), within 4 standard errors.
CheckReport mc_covered_edges(int n, double p, int k, long long trials,
                             std::uint64_t seed);

// Random-placement distance experiment: m_s edges are placed uniformly among
// the |P| pairs covered by the support of pi, and X counts edges mapped to
// non-edges.
struct DistanceExperiment {
  int n = 0;
  int k = 0;
  int m_s = 0;
  long long trials = 0;
};

// Empirical (and, when C(|P|, m_s) <= 10^6, exact exhaustive) mean of X
// against m_s * ((|P|-f)/|P|) * ((|P|-m_s)/(|P|-1)) where f counts the
// 2-cycles of pi. pi must move exactly the k vertices of its support.
CheckReport mc_placement_expectation(const DistanceExperiment& exp,
                                  const Permutation& pi, std::uint64_t seed);

// Closed form E[X] for the distance experiment, in exact arithmetic.
Rational placement_closed_form(long long p_size, long long m_s, long long f);

// Complete small-space sweep: every support size and vertex count with
// |P| <= max_pair_count, every derangement of the support, every m_s; the
// exhaustive placement mean must equal the closed form exactly.
CheckReport placement_exact_sweep(int max_pair_count = 12);

// Conditional edge probability in G_{n,p,d}: estimate of Pr[e in E | F in E]
// within [p - w, p + 2d/(n-1) + w], w = 4 conditional binomial standard
// errors. Oversamples until the conditional sample reaches
// target_conditional, refusing (inconclusive) past trial_cap runs.
CheckReport mc_edge_probability(const GnpdParams& params,
                                const std::vector<Edge>& forced, Edge e,
                                long long target_conditional, std::uint64_t seed,
                                long long trial_cap = 1'000'000);

// Sampled check that every k-permutation maps at least (d-8)k edges to
// non-edges: random k-permutations plus an annealing search, zero tolerance.
// Vacuous (auto-pass) when d <= 8. Also runs and records the three
// structural prerequisites (average degree, common neighbors, density).
CheckReport check_small_k_bound(const Graph& g, double p, int d, int k,
                                long long samples, std::uint64_t seed,
                                const SearchParams& search = {});

}  // namespace rasym
