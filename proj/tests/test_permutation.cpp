#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "rasym/errors.hpp"
#include "rasym/permutation.hpp"

using namespace rasym;
namespace oracle = rasym::testing;

namespace {

Permutation perm_of(std::vector<int> mapping) {
  return Permutation::from_mapping(std::move(mapping));
}

}  // namespace

TEST_CASE("support caches the moved labels") {
  CHECK(Permutation::identity(4).support().empty());
  CHECK(Permutation::identity(4).is_identity());
  CHECK(Permutation::transposition(5, 0, 1).support() == std::vector<int>{0, 1});
  // the 3-cycle 0 -> 1 -> 2 -> 0 on four labels
  CHECK(perm_of({1, 2, 0, 3}).support() == std::vector<int>{0, 1, 2});
  CHECK(perm_of({1, 2, 0, 3}).k() == 3);
}

TEST_CASE("from_mapping validates bijections") {
  CHECK_THROWS_AS(perm_of({0, 0, 1}), DomainError);
  CHECK_THROWS_AS(perm_of({0, 3, 1}), DomainError);
  CHECK_THROWS_AS(perm_of({-1, 1, 0}), DomainError);
}

TEST_CASE("pair_fixpoints counts 2-cycles") {
  CHECK(perm_of({1, 0, 3, 2}).pair_fixpoints() == 2);
  CHECK(perm_of({1, 2, 3, 0}).pair_fixpoints() == 0);
  const Permutation mixed = perm_of({1, 0, 3, 4, 2, 5});  // (0 1)(2 3 4)
  CHECK(mixed.pair_fixpoints() == 1);
  // verify by scanning all pairs
  int scanned = 0;
  for (int u = 0; u < mixed.n(); ++u) {
    for (int v = u + 1; v < mixed.n(); ++v) {
      if (mixed(u) == v && mixed(v) == u) ++scanned;
    }
  }
  CHECK(mixed.pair_fixpoints() == scanned);
}

TEST_CASE("pair fixpoints never exceed k/2") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const Permutation& pi : enumerate_k_perms(n, k)) {
        CHECK(pi.pair_fixpoints() <= pi.k() / 2);
      }
    }
  }
}

TEST_CASE("cycle notation") {
  CHECK(Permutation::identity(5).cycle_notation() == "()");
  CHECK(Permutation::transposition(4, 0, 3).cycle_notation() == "(0 3)");
  // (0 3)(1 4 2)
  CHECK(perm_of({3, 4, 1, 0, 2}).cycle_notation() == "(0 3)(1 4 2)");
}

TEST_CASE("compose and inverse") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Permutation pi = sample_k_perm(7, 2 + static_cast<int>(rng.below(6)), rng);
    CHECK(pi.compose(pi.inverse()).is_identity());
    CHECK(pi.inverse().compose(pi).is_identity());
  }
  const Permutation a = perm_of({1, 0, 2});
  const Permutation b = perm_of({0, 2, 1});
  CHECK(a.compose(b)(1) == a(b(1)));
}

TEST_CASE("enumeration yields every k-support permutation exactly once") {
  for (int n = 1; n <= 7; ++n) {
    std::map<int, std::set<std::vector<int>>> by_support;
    for (const auto& mapping : oracle::all_mappings(n)) {
      by_support[oracle::support_size(mapping)].insert(mapping);
    }
    for (int k = 0; k <= n; ++k) {
      const auto enumerated = enumerate_k_perms(n, k);
      std::set<std::vector<int>> as_set;
      for (const Permutation& pi : enumerated) as_set.insert(pi.mapping());
      CHECK(as_set.size() == enumerated.size());  // no duplicates
      CHECK(as_set == by_support[k]);
      CHECK(BigInt(enumerated.size()) == count_k_perms(n, k));
    }
  }
}

TEST_CASE("enumeration specifics") {
  CHECK(enumerate_k_perms(3, 2).size() == 3);
  CHECK(enumerate_k_perms(4, 3).size() == 8);
  CHECK(enumerate_k_perms(5, 1).empty());
  const auto identity_only = enumerate_k_perms(4, 0);
  REQUIRE(identity_only.size() == 1);
  CHECK(identity_only[0].is_identity());
  CHECK_THROWS_AS(enumerate_k_perms(3, 4), DomainError);

  // deterministic order: supports lexicographic, images lexicographic
  const auto perms = enumerate_k_perms(4, 2);
  REQUIRE(perms.size() == 6);
  CHECK(perms[0] == Permutation::transposition(4, 0, 1));
  CHECK(perms[1] == Permutation::transposition(4, 0, 2));
  CHECK(perms[5] == Permutation::transposition(4, 2, 3));
}

TEST_CASE("derangement and k-permutation counts") {
  const long long expected[] = {1, 0, 1, 2, 9, 44, 265, 1854};
  for (int k = 0; k <= 7; ++k) CHECK(derangement_count(k) == BigInt(expected[k]));
  CHECK(count_k_perms(10, 0) == BigInt(1));
  CHECK(count_k_perms(10, 1) == BigInt(0));
  CHECK(count_k_perms(6, 4) == BigInt(135));
  // exact big integers far past 64 bits
  CHECK(count_k_perms(100, 100) == derangement_count(100));
  CHECK(derangement_count(100).str().size() == 158);
}

TEST_CASE("sample_k_perm produces uniform k-permutations") {
  Rng rng = Rng::stream(2024, "test-sample");
  for (int trial = 0; trial < 200; ++trial) {
    const Permutation pi = sample_k_perm(5, 2, rng);
    CHECK(pi.k() == 2);
  }
  CHECK_THROWS_AS(sample_k_perm(5, 1, rng), DomainError);
  CHECK_THROWS_AS(sample_k_perm(5, 6, rng), DomainError);

  // chi-square uniformity over the 6 transpositions of n=4 at 0.001
  // significance; the 0.999 quantile of chi-square with 5 dof is 20.515
  std::map<std::vector<int>, long long> counts;
  Rng sampler = Rng::stream(99, "test-chi2");
  const long long samples = 30000;
  for (long long i = 0; i < samples; ++i) {
    counts[sample_k_perm(4, 2, sampler).mapping()] += 1;
  }
  CHECK(counts.size() == 6);
  const double expected_count = static_cast<double>(samples) / 6.0;
  double chi2 = 0.0;
  for (const auto& [mapping, count] : counts) {
    const double diff = static_cast<double>(count) - expected_count;
    chi2 += diff * diff / expected_count;
  }
  CHECK(chi2 < 20.515);
}

TEST_CASE("sampling n=3, k=3 splits evenly across the two 3-cycles") {
  Rng rng = Rng::stream(55, "test-3cycles");
  const long long samples = 10000;
  long long forward = 0;  // (0 1 2), mapping {1, 2, 0}
  for (long long i = 0; i < samples; ++i) {
    const Permutation pi = sample_k_perm(3, 3, rng);
    REQUIRE(pi.k() == 3);
    if (pi.mapping() == std::vector<int>{1, 2, 0}) ++forward;
  }
  // binomial(10^4, 1/2): 3 sigma = 150
  CHECK(std::abs(forward - samples / 2) <= 150);
}

TEST_CASE("sampling is deterministic per seed") {
  Rng a = Rng::stream(7, "s");
  Rng b = Rng::stream(7, "s");
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_k_perm(9, 4, a) == sample_k_perm(9, 4, b));
  }
}

TEST_CASE("for_each_k_perm stops when the visitor returns false") {
  int seen = 0;
  const bool completed = for_each_k_perm(5, 3, [&](auto, auto) {
    return ++seen < 4;
  });
  CHECK_FALSE(completed);
  CHECK(seen == 4);
}
