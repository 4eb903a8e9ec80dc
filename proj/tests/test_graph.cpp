#include "doctest.h"

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "rasym/errors.hpp"
#include "rasym/graph.hpp"
#include "rasym/permutation.hpp"

using namespace rasym;
namespace oracle = rasym::testing;

TEST_CASE("dist is half the edge symmetric difference") {
  const Graph g = Graph::from_edges(3, {{0, 1}});
  const Graph h = Graph::from_edges(3, {{0, 2}});
  CHECK(dist(g, g) == Rational(0));
  CHECK(dist(g, h) == Rational(1));
  CHECK(dist(h, g) == Rational(1));

  const Graph two = Graph::from_edges(4, {{0, 1}, {1, 2}});
  const Graph empty = Graph::from_edges(4, {});
  CHECK(dist(two, empty) == Rational(1));

  // half-integral when edge counts differ by an odd amount
  const Graph one = Graph::from_edges(4, {{0, 1}});
  CHECK(dist(one, empty) == Rational(1, 2));

  CHECK_THROWS_AS(dist(g, empty), DomainError);
}

TEST_CASE("dist is a metric on fixed-n graphs") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const Graph a = oracle::random_graph(n, 0.4, rng);
    const Graph b = oracle::random_graph(n, 0.4, rng);
    const Graph c = oracle::random_graph(n, 0.4, rng);
    CHECK(dist(a, b) == dist(b, a));
    CHECK((dist(a, b) == Rational(0)) == (a.edges() == b.edges()));
    CHECK(dist(a, c) <= dist(a, b) + dist(b, c));
  }
}

TEST_CASE("dist_perm counts edges mapped to non-edges") {
  const Graph triangle = Graph::complete(3);
  for (const Permutation& pi : oracle::k_perms_by_filter(3, 2)) {
    CHECK(dist_perm(triangle, pi) == 0);
  }
  const Graph path = Graph::path(3);
  CHECK(dist_perm(path, Permutation::transposition(3, 0, 2)) == 0);
  CHECK(dist_perm(path, Permutation::transposition(3, 1, 2)) == 1);
}

TEST_CASE("dist_perm equals dist after apply_perm") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const Graph g = oracle::random_graph(n, 0.5, rng);
    for (const auto& mapping : oracle::all_mappings(n)) {
      const Permutation pi = Permutation::from_mapping(mapping);
      CHECK(Rational(dist_perm(g, pi)) == dist(g, apply_perm(g, pi)));
    }
  }
}

TEST_CASE("apply_perm relabels edges") {
  const Graph g = Graph::from_edges(3, {{0, 1}});
  CHECK(apply_perm(g, Permutation::identity(3)).edges() == g.edges());
  const Graph swapped = apply_perm(g, Permutation::transposition(3, 1, 2));
  CHECK(swapped.edges() == std::vector<Edge>{{0, 2}});

  Rng rng(3);
  const Graph random = oracle::random_graph(6, 0.5, rng);
  Rng sampler(11);
  const Permutation pi = sample_k_perm(6, 4, sampler);
  CHECK(apply_perm(apply_perm(random, pi), pi.inverse()).edges() == random.edges());
  CHECK(apply_perm(random, pi).m() == random.m());
}

TEST_CASE("covered_edges counts edges touching S") {
  const Graph k4 = Graph::complete(4);
  CHECK(covered_edges(k4, VertexSet(4, {0})) == 3);
  CHECK(covered_edges(k4, VertexSet(4, {0, 1, 2, 3})) == 6);
  CHECK(covered_edges(k4, VertexSet(4, {})) == 0);

  const Graph path = Graph::path(4);
  CHECK(covered_edges(path, VertexSet(4, {1, 2})) == 3);

  // monotone in S, and covered(V) == m
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(5));
    const Graph g = oracle::random_graph(n, 0.5, rng);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    CHECK(covered_edges(g, VertexSet(n, all)) == g.m());
    std::vector<int> members =
        rng.sample_subset(n, 2 + static_cast<int>(rng.below(n - 2)));
    const long long full = covered_edges(g, VertexSet(n, members));
    std::vector<int> fewer(members.begin(), members.end() - 1);
    CHECK(covered_edges(g, VertexSet(n, fewer)) <= full);
  }
}

TEST_CASE("degree stats") {
  const DegreeStats k4 = degree_stats(Graph::complete(4));
  CHECK(k4.min == 3);
  CHECK(k4.max == 3);
  CHECK(k4.average == Rational(3));

  const DegreeStats empty = degree_stats(Graph::from_edges(5, {}));
  CHECK(empty.min == 0);
  CHECK(empty.max == 0);
  CHECK(empty.average == Rational(0));

  const DegreeStats star = degree_stats(Graph::star(4));
  CHECK(star.min == 1);
  CHECK(star.max == 4);
  CHECK(star.average == Rational(8, 5));
}

TEST_CASE("induced edge count") {
  const Graph k4 = Graph::complete(4);
  CHECK(induced_edge_count(k4, VertexSet(4, {0, 1, 2})) == 3);
  CHECK(induced_edge_count(k4, VertexSet(4, {2})) == 0);
  CHECK(induced_edge_count(k4, VertexSet(4, {})) == 0);
  const Graph path = Graph::path(4);
  CHECK(induced_edge_count(path, VertexSet(4, {0, 1, 3})) == 1);
}

TEST_CASE("max_common_neighbors matches the naive intersection count") {
  CHECK(max_common_neighbors(Graph::cycle(4)) == 2);
  CHECK(max_common_neighbors(Graph::path(3)) == 1);
  CHECK(max_common_neighbors(Graph::complete(4)) == 2);

  Rng rng(9);
  for (int n : {5, 10, 18, 30}) {
    for (int trial = 0; trial < 8; ++trial) {
      const Graph g = oracle::random_graph(n, 0.3, rng);
      CHECK(max_common_neighbors(g) == oracle::naive_max_common_neighbors(g));
    }
  }
}

TEST_CASE("vertex sets reject duplicates and out-of-range members") {
  CHECK_THROWS_AS(VertexSet(4, {0, 0}), DomainError);
  CHECK_THROWS_AS(VertexSet(4, {4}), DomainError);
  CHECK_THROWS_AS(VertexSet(4, {-1}), DomainError);
  const VertexSet s(4, {3, 1});
  CHECK(s.members() == std::vector<int>{1, 3});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
}

TEST_CASE("graph construction rejects invalid inputs") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{-1, 2}}), DomainError);
  // auxiliary edges must be real edges
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}}, {{0, 2}}), DomainError);
}

TEST_CASE("edge list round trip") {
  Rng rng(13);
  const Graph g = oracle::random_graph(9, 0.4, rng);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  const Graph back = read_edge_list(in);
  CHECK(back.n() == g.n());
  CHECK(back.edges() == g.edges());
  CHECK(back.content_hash() == g.content_hash());

  std::ostringstream empty_out;
  write_edge_list(Graph::from_edges(10, {}), empty_out);
  CHECK(empty_out.str() == "10 0\n");
}

TEST_CASE("edge list reader names the offending line") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  CHECK_THROWS_WITH_AS(read("2 1\n0 0\n"), doctest::Contains("line 2"), IoError);
  CHECK_THROWS_WITH_AS(read("3 2\n0 1\n0 1\n"), doctest::Contains("line 3"), IoError);
  CHECK_THROWS_WITH_AS(read("3 2\n0 2\n0 1\n"), doctest::Contains("line 3"), IoError);
  CHECK_THROWS_WITH_AS(read("3 1\n1 0\n"), doctest::Contains("u < v"), IoError);
  CHECK_THROWS_WITH_AS(read("3 1\n0 5\n"), doctest::Contains("out of range"), IoError);
  CHECK_THROWS_WITH_AS(read("3 2\n0 1\n"), doctest::Contains("expected 2 edges"), IoError);
  CHECK_THROWS_WITH_AS(read("abc\n"), doctest::Contains("line 1"), IoError);
  CHECK_THROWS_WITH_AS(read("3 1\n0 1\njunk\n"), doctest::Contains("line 3"), IoError);
}

TEST_CASE("aux edge block round trip") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {2, 3}}, {{0, 2}});
  std::ostringstream out;
  write_edge_list(g, out);
  CHECK(out.str() == "4 3\n0 1\n0 2\n2 3\n# aux 0 2\n");
  std::istringstream in(out.str());
  const Graph back = read_edge_list(in);
  CHECK(back.aux_edges() == std::vector<Edge>{{0, 2}});
}

TEST_CASE("content hash identifies edge structure") {
  const Graph a = Graph::from_edges(4, {{0, 1}});
  const Graph b = Graph::from_edges(4, {{0, 2}});
  const Graph c = Graph::from_edges(4, {{0, 1}});
  CHECK(a.content_hash() != b.content_hash());
  CHECK(a.content_hash() == c.content_hash());
}
