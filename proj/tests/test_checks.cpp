#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "rasym/checks.hpp"
#include "rasym/errors.hpp"
#include "rasym/generators.hpp"

using namespace rasym;
namespace oracle = rasym::testing;

TEST_CASE("avg degree check") {
  const Graph complete = Graph::complete(8);
  const CheckReport on_target = check_avg_degree(complete, 1.0, 7);
  CHECK(on_target.verdict == Verdict::pass);

  const CheckReport degenerate = check_avg_degree(gen_gnpd({5, 0.0, 2, 1}), 0.0, 2);
  CHECK(degenerate.verdict == Verdict::skipped);

  // an empty graph is nowhere near average degree p*n = 100
  const CheckReport off = check_avg_degree(Graph::from_edges(100, {}), 1.0, 99);
  CHECK(off.verdict == Verdict::fail);
}

TEST_CASE("common neighbors check") {
  CHECK(check_common_neighbors(Graph::cycle(4)).verdict == Verdict::pass);
  CHECK(check_common_neighbors(Graph::complete(4)).verdict == Verdict::pass);
  const CheckReport k5 = check_common_neighbors(Graph::complete(5));
  CHECK(k5.verdict == Verdict::fail);
  CHECK(k5.stats["max_common_neighbors"] == 3);
}

TEST_CASE("small set density on forests and cliques") {
  const CheckReport forest = check_small_set_density(Graph::path(9), 9);
  CHECK(forest.verdict == Verdict::pass);

  // C(7,2) = 21 = 3*7 sits exactly on the boundary
  const CheckReport k7 = check_small_set_density(Graph::complete(7), 7);
  CHECK(k7.verdict == Verdict::pass);

  const CheckReport k8 = check_small_set_density(Graph::complete(8), 8);
  CHECK(k8.verdict == Verdict::fail);
  REQUIRE(k8.stats.contains("violator"));
  CHECK(k8.stats["violator_size"] == 8);
  CHECK(k8.stats["induced_edges"] == 28);
}

TEST_CASE("density enumeration agrees with the all-subsets oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 8 + static_cast<int>(rng.below(5));  // up to 12
    const double p = trial % 2 == 0 ? 0.5 : 0.8;
    const Graph g = oracle::random_graph(n, p, rng);
    const int limit = 8 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 7)));
    const auto found = find_small_dense_set(g, limit, 10'000'000);
    CHECK(found.has_value() == oracle::naive_has_dense_subset(g, limit));
    if (found) {
      CHECK(static_cast<int>(found->size()) <= limit);
      CHECK(induced_edge_count(g, VertexSet(g.n(), *found)) >
            3 * static_cast<long long>(found->size()));
    }
  }
}

TEST_CASE("density certificate is sound") {
  Rng rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8 + static_cast<int>(rng.below(5));
    const Graph g = oracle::random_graph(n, 0.35, rng);
    const int limit = std::min(n, 8 + static_cast<int>(rng.below(5)));
    if (density_certificate(g, limit)) {
      CHECK_FALSE(oracle::naive_has_dense_subset(g, limit));
    }
  }
  // dense graphs must not be certified
  CHECK_FALSE(density_certificate(Graph::complete(8), 8));
  // sparse graphs with tame common neighborhoods are certified directly
  CHECK(density_certificate(Graph::cycle(20), 12));
  CHECK(density_certificate(Graph::path(20), 16));
}

TEST_CASE("density check refuses past the node budget") {
  const Graph g = gen_gnp({60, 0.3, 5});
  const CheckReport refused = check_small_set_density(g, 10, 50);
  if (refused.verdict == Verdict::inconclusive) {
    CHECK(refused.note.find("budget") != std::string::npos);
  } else {
    // the certificate may decide before enumeration ever starts
    CHECK(refused.verdict == Verdict::pass);
  }
  CHECK_THROWS_AS(find_small_dense_set(g, 10, 50), BudgetError);
}

TEST_CASE("small limits pass by arithmetic") {
  const CheckReport trivial = check_small_set_density(Graph::complete(7), 7);
  CHECK(trivial.stats["method"] == "arithmetic");
  CHECK(trivial.verdict == Verdict::pass);
}

TEST_CASE("covered edges monte carlo") {
  const CheckReport all = mc_covered_edges(20, 1.0, 5, 1000, 7);
  CHECK(all.verdict == Verdict::pass);  // m_S = |P| exactly, zero variance
  const CheckReport none = mc_covered_edges(20, 0.0, 5, 1000, 7);
  CHECK(none.verdict == Verdict::pass);

  const CheckReport mid = mc_covered_edges(60, 0.3, 10, 2000, 11);
  CHECK(mid.verdict == Verdict::statistical_pass);
  CHECK(mid.stats["pair_count"] == 45 + 500);

  CHECK_THROWS_AS(mc_covered_edges(20, 0.5, 5, 10, 7), DomainError);
}

TEST_CASE("placement worked instance gives exactly 6/5") {
  CHECK(placement_closed_form(5, 2, 1) == Rational(6, 5));
  const Permutation swap01 = Permutation::transposition(4, 0, 1);
  const CheckReport report =
      mc_placement_expectation({4, 2, 2, 2000}, swap01, 13);
  CHECK(report.verdict == Verdict::statistical_pass);
  CHECK(report.stats["pair_count"] == 5);
  CHECK(report.stats["pair_fixpoints"] == 1);
  CHECK(report.stats["closed_form"][0] == 6);
  CHECK(report.stats["closed_form"][1] == 5);
  REQUIRE(report.stats.contains("exhaustive_mean"));
  CHECK(report.stats["exhaustive_mean"][0] == 6);
  CHECK(report.stats["exhaustive_mean"][1] == 5);
  CHECK(report.stats["exhaustive_matches"] == true);
}

TEST_CASE("placement forced outcomes") {
  // m_S = |P|: every covered pair is an edge, X = 0
  const Permutation swap01 = Permutation::transposition(4, 0, 1);
  const CheckReport full = mc_placement_expectation({4, 2, 5, 1000}, swap01, 3);
  CHECK(full.verdict == Verdict::statistical_pass);
  CHECK(full.stats["closed_form"][0] == 0);
  CHECK(full.stats["empirical_mean"] == 0.0);

  // f = 0, m_S = 1: the lone edge always lands on a non-edge
  const Permutation cycle3 = Permutation::from_mapping({1, 2, 0, 3});
  const CheckReport lone = mc_placement_expectation({4, 3, 1, 1000}, cycle3, 3);
  CHECK(lone.verdict == Verdict::statistical_pass);
  CHECK(lone.stats["closed_form"][0] == 1);
  CHECK(lone.stats["closed_form"][1] == 1);
  CHECK(lone.stats["empirical_mean"] == 1.0);
}

TEST_CASE("placement precondition rejects mismatched experiments") {
  const Permutation swap01 = Permutation::transposition(4, 0, 1);
  CHECK_THROWS_AS(mc_placement_expectation({4, 3, 2, 1000}, swap01, 1), DomainError);
  CHECK_THROWS_AS(mc_placement_expectation({5, 2, 2, 1000}, swap01, 1), DomainError);
  CHECK_THROWS_AS(mc_placement_expectation({4, 2, 6, 1000}, swap01, 1), DomainError);
}

TEST_CASE("placement exact sweep over every small pair space") {
  const CheckReport sweep = placement_exact_sweep(12);
  CHECK(sweep.verdict == Verdict::pass);
  CHECK(sweep.stats["mismatches"] == 0);
  CHECK(sweep.stats["cells_checked"].get<long long>() > 500);
}

TEST_CASE("placement closed form dominates the displayed lower bound") {
  // E[X] >= ((n-2)/(n-1)) * m_S (|P|-m_S) / |P| across the swept grid
  for (int n = 2; 2 * n - 3 <= 12; ++n) {
    for (int k = 2; k <= n; ++k) {
      const long long p_size =
          static_cast<long long>(k) * (k - 1) / 2 + static_cast<long long>(k) * (n - k);
      if (p_size > 12) break;
      for (const Permutation& pi : enumerate_k_perms(k, k)) {
        // embed the derangement of {0..k-1} into n labels
        std::vector<int> mapping(n);
        std::iota(mapping.begin(), mapping.end(), 0);
        for (int i = 0; i < k; ++i) mapping[i] = pi(i);
        const Permutation embedded = Permutation::from_mapping(std::move(mapping));
        const long long f = embedded.pair_fixpoints();
        for (long long m_s = 0; m_s <= p_size; ++m_s) {
          const Rational closed = placement_closed_form(p_size, m_s, f);
          const Rational lower = Rational(n - 2, n - 1) *
                                 Rational(m_s * (p_size - m_s), p_size);
          CHECK(closed >= lower);
        }
      }
    }
  }
}

TEST_CASE("edge probability sandwich") {
  // p = 0 with F empty: only auxiliary edges remain, within [0, 2d/(n-1)]
  const CheckReport aux_only =
      mc_edge_probability({40, 0.0, 2, 0}, {}, Edge(3, 7), 1000, 5, 10'000);
  CHECK(aux_only.verdict == Verdict::statistical_pass);
  CHECK(aux_only.stats["estimate"].get<double>() <=
        aux_only.stats["upper"].get<double>());

  // re-running with the same seed reproduces the report bit for bit
  const CheckReport again =
      mc_edge_probability({40, 0.0, 2, 0}, {}, Edge(3, 7), 1000, 5, 10'000);
  CHECK(aux_only.to_json() == again.to_json());

  // a rare conditioning event under a tight cap is inconclusive, not a failure
  const CheckReport rare = mc_edge_probability({40, 0.001, 1, 0}, {Edge(0, 1), Edge(2, 3)},
                                               Edge(1, 2), 1000, 5, 200);
  CHECK(rare.verdict == Verdict::inconclusive);

  CHECK_THROWS_AS(
      mc_edge_probability({40, 0.5, 2, 0}, {Edge(0, 1)}, Edge(0, 1), 1000, 5),
      DomainError);
}

TEST_CASE("small-k bound check") {
  // d <= 8 makes the bound vacuous
  const Graph small_d = gen_gnpd({200, 0.02, 4, 9});
  const CheckReport vacuous = check_small_k_bound(small_d, 0.02, 4, 3, 100, 1);
  CHECK(vacuous.verdict == Verdict::pass);
  CHECK(vacuous.note.find("vacuous") != std::string::npos);

  // k beyond n/d^2 is outside the regime
  CHECK_THROWS_AS(check_small_k_bound(small_d, 0.02, 4, 20, 100, 1), DomainError);

  // a live case: d = 9, bound (d-8)k = 2
  SearchParams quick;
  quick.restarts = 4;
  quick.steps = 2000;
  const Graph g = gen_gnpd({200, 0.04, 9, 17});
  const CheckReport live = check_small_k_bound(g, 0.04, 9, 2, 300, 23, quick);
  CHECK(live.stats["bound"] == 2);
  CHECK(live.verdict == Verdict::statistical_pass);
  CHECK(live.stats["violations"] == 0);
  CHECK(live.stats.contains("prerequisites"));
}

TEST_CASE("reports are deterministic given the seed") {
  const CheckReport a = mc_covered_edges(30, 0.4, 6, 1500, 99);
  const CheckReport b = mc_covered_edges(30, 0.4, 6, 1500, 99);
  CHECK(a.to_json() == b.to_json());
  const CheckReport c = mc_covered_edges(30, 0.4, 6, 1500, 100);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("check report json shape") {
  const auto doc = check_common_neighbors(Graph::cycle(4)).to_json();
  CHECK(doc.contains("name"));
  CHECK(doc.contains("verdict"));
  CHECK(doc.contains("stats"));
  CHECK(doc.contains("tolerance"));
  CHECK(doc.contains("samples"));
  CHECK(doc.contains("seed"));
  CHECK(doc.contains("note"));
  CHECK(doc["verdict"] == "pass");
}
