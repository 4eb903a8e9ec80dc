#include "doctest.h"

#include <cmath>
#include <sstream>

#include "rasym/errors.hpp"
#include "rasym/generators.hpp"
#include "rasym/graph.hpp"

using namespace rasym;

namespace {

std::string serialized(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

}  // namespace

TEST_CASE("gnp boundary probabilities") {
  const Graph empty = gen_gnp({10, 0.0, 1});
  CHECK(empty.m() == 0);
  const Graph complete = gen_gnp({10, 1.0, 1});
  CHECK(complete.m() == 45);
  CHECK_THROWS_AS(gen_gnp({10, 1.5, 1}), DomainError);
  CHECK_THROWS_AS(gen_gnp({10, -0.1, 1}), DomainError);
  CHECK_THROWS_AS(gen_gnp({0, 0.5, 1}), DomainError);
}

TEST_CASE("gnp edge count concentrates at p C(n,2)") {
  // binomial moments: mean 2475, sigma = sqrt(4950)/2
  const int seeds = 2000;
  double sum = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    sum += static_cast<double>(gen_gnp({100, 0.5, static_cast<std::uint64_t>(seed)}).m());
  }
  const double mean = sum / seeds;
  const double sigma = std::sqrt(4950.0 * 0.25);
  CHECK(std::abs(mean - 2475.0) <= 4.0 * sigma / std::sqrt(seeds));
}

TEST_CASE("gnp is deterministic per seed") {
  CHECK(serialized(gen_gnp({40, 0.3, 9})) == serialized(gen_gnp({40, 0.3, 9})));
  CHECK(serialized(gen_gnp({40, 0.3, 9})) != serialized(gen_gnp({40, 0.3, 10})));
}

TEST_CASE("gnpd repairs to the degree floor") {
  // p=0, d=n-1 forces the complete graph
  const Graph forced = gen_gnpd({6, 0.0, 5, 3});
  CHECK(forced.m() == 15);
  CHECK(forced.aux_edges().size() == forced.edges().size());

  // p=1 needs no repair at all
  const Graph untouched = gen_gnpd({6, 1.0, 5, 3});
  CHECK(untouched.m() == 15);
  CHECK(untouched.aux_edges().empty());

  // p=0, d=2, n=5: five iterations add at most two edges each, and the
  // degree-sum bound forces at least n*d/2 edges
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Graph g = gen_gnpd({5, 0.0, 2, seed});
    CHECK(degree_stats(g).min >= 2);
    CHECK(g.m() >= 5);
    CHECK(g.m() <= 10);
  }
}

TEST_CASE("gnpd minimum degree holds for every seed") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = gen_gnpd({60, 0.05, 4, seed});
    CHECK(degree_stats(g).min >= 4);
    // auxiliary edges are tagged and are a subset of the edge set
    for (const Edge& e : g.aux_edges()) CHECK(g.has_edge(e.u, e.v));
  }
}

TEST_CASE("gnpd is byte-identical across runs") {
  const GnpdParams params{50, 0.04, 3, 77};
  CHECK(serialized(gen_gnpd(params)) == serialized(gen_gnpd(params)));
}

TEST_CASE("gnpd extends the gnp edge stream of the same seed") {
  const Graph base = gen_gnp({30, 0.1, 5});
  const Graph repaired = gen_gnpd({30, 0.1, 2, 5});
  for (const Edge& e : base.edges()) CHECK(repaired.has_edge(e.u, e.v));
  // non-auxiliary edges are exactly the base sample
  CHECK(repaired.m() == base.m() + static_cast<long long>(repaired.aux_edges().size()));
}

TEST_CASE("gnpd parameter validation") {
  CHECK_THROWS_AS(gen_gnpd({5, 0.5, 0, 1}), DomainError);
  CHECK_THROWS_AS(gen_gnpd({5, 0.5, 5, 1}), DomainError);
}

TEST_CASE("default degree floor") {
  CHECK(default_degree_floor(300, 0.3) == 90);  // ceil(0.3 * 299)
  CHECK(default_degree_floor(5000, 20.0 / 5000) == 20);
  CHECK(default_degree_floor(10, 0.0) == 0);
  CHECK(default_degree_floor(11, 1.0) == 10);
}
