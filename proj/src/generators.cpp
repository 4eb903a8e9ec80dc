#include "rasym/generators.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

#include "rasym/errors.hpp"
#include "rasym/rng.hpp"

namespace rasym {

namespace {

void validate_gnp(int n, double p) {
  if (n < 1) throw DomainError("generator: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("generator: need 0 <= p <= 1");
}

// One Bernoulli draw per pair, in lexicographic (u, v) order. Kept as the
// single reference sampling path so that gen_gnpd can extend the identical
// edge stream.
std::vector<Edge> sample_gnp_edges(int n, double p, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "gnp");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

}  // namespace

Graph gen_gnp(const GnpParams& params) {
  validate_gnp(params.n, params.p);
  return Graph::from_edges(params.n, sample_gnp_edges(params.n, params.p, params.seed));
}

Graph gen_gnpd(const GnpdParams& params) {
  validate_gnp(params.n, params.p);
  if (params.d < 1 || params.d > params.n - 1) {
    throw DomainError("gen_gnpd: need 1 <= d <= n - 1");
  }
  const int n = params.n;
  std::vector<Edge> edges = sample_gnp_edges(n, params.p, params.seed);

  std::vector<std::unordered_set<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }

  std::vector<Edge> aux;
  for (int i = 0; i < n; ++i) {
    const int deficit = params.d - static_cast<int>(adj[i].size());
    if (deficit <= 0) continue;
    std::vector<int> candidates;
    candidates.reserve(n - 1 - adj[i].size());
    for (int v = 0; v < n; ++v) {
      if (v != i && !adj[i].contains(v)) candidates.push_back(v);
    }
    // d <= n-1 guarantees enough non-neighbors: (n-1) - d_i >= d - d_i
    Rng rng = Rng::stream(params.seed, "aux", static_cast<std::uint64_t>(i));
    for (int picked = 0; picked < deficit; ++picked) {
      std::size_t j = picked + rng.below(candidates.size() - picked);
      std::swap(candidates[picked], candidates[j]);
      int v = candidates[picked];
      aux.emplace_back(i, v);
      edges.emplace_back(i, v);
      adj[i].insert(v);
      adj[v].insert(i);
    }
  }
  return Graph::from_edges(n, std::move(edges), std::move(aux));
}

int default_degree_floor(int n, double p) {
  validate_gnp(n, p);
  return static_cast<int>(std::ceil(p * (n - 1)));
}

}  // namespace rasym
