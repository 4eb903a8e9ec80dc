#pragma once

#include <cstdint>

#include "rasym/graph.hpp"

namespace rasym {

// Erdos-Renyi model: each unordered pair is an edge independently with
// probability p.
struct GnpParams {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// G_{n,p} followed by an iterative minimum-degree repair: vertices are
// processed in ascending label order, and a vertex whose current degree
// (including edges added by earlier iterations) is below d receives
// auxiliary edges to a uniform subset of its current non-neighbors.
struct GnpdParams {
  int n = 0;
  double p = 0.0;
  int d = 0;
  std::uint64_t seed = 0;
};

Graph gen_gnp(const GnpParams& params);
Graph gen_gnpd(const GnpdParams& params);

// d = ceil(p * (n - 1)), the degree floor matched to the edge probability.
int default_degree_floor(int n, double p);

}  // namespace rasym
