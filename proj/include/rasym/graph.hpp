#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rasym/rational.hpp"

namespace rasym {

class Permutation;

// Unordered vertex pair, normalized to u < v.
struct Edge {
  int u = 0;
  int v = 0;
  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Subset of [0, n), sorted and duplicate-free.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(int n, std::vector<int> members);

  int k() const { return static_cast<int>(members_.size()); }
  bool contains(int v) const;
  const std::vector<int>& members() const { return members_; }

 private:
  std::vector<int> members_;
};

// Simple undirected labeled graph, immutable after construction. Adjacency
// is kept as sorted neighbor lists, plus dense bit-rows when n <= 4096 so
// that transposition distances reduce to row xor popcounts.
class Graph {
 public:
  static constexpr int kDenseLimit = 4096;

  static Graph from_edges(int n, std::vector<Edge> edges);
  static Graph from_edges(int n, std::vector<Edge> edges,
                          std::vector<Edge> aux_edges);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  // Star K_{1,leaves} with the hub at label 0.
  static Graph star(int leaves);

  int n() const { return n_; }
  long long m() const { return static_cast<long long>(edges_.size()); }

  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edges added by the minimum-degree repair pass of the G_{n,p,d} sampler;
  // empty for all other constructions. Always a subset of edges().
  const std::vector<Edge>& aux_edges() const { return aux_edges_; }

  bool dense() const { return !rows_.empty(); }
  int row_words() const { return row_words_; }
  std::span<const std::uint64_t> row(int v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * row_words_,
            static_cast<std::size_t>(row_words_)};
  }

  // FNV-1a over (n, m, sorted edge endpoints); identifies the edge structure,
  // not the auxiliary tagging.
  std::uint64_t content_hash() const { return hash_; }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;      // sorted lexicographically
  std::vector<Edge> aux_edges_;  // sorted lexicographically
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> rows_;
  int row_words_ = 0;
  std::uint64_t hash_ = 0;
};

// Half the Hamming distance between adjacency matrices: |E(G) xor E(H)| / 2.
// Integer whenever both graphs have the same edge count.
Rational dist(const Graph& g, const Graph& h);

// Number of edges of g mapped to non-edges by pi. Equals dist(g, apply_perm)
// because |E| is preserved under relabeling.
long long dist_perm(const Graph& g, const Permutation& pi);

Graph apply_perm(const Graph& g, const Permutation& pi);

// m_S: edges with at least one endpoint in s, |E(S)| + |E(S, V\S)|.
long long covered_edges(const Graph& g, const VertexSet& s);

long long induced_edge_count(const Graph& g, const VertexSet& s);

struct DegreeStats {
  int min = 0;
  int max = 0;
  Rational average;  // 2m/n, exact
};
DegreeStats degree_stats(const Graph& g);

// max over vertex pairs {u,v} of |N(u) ∩ N(v) \ {u,v}|, by two-path counting:
// every w contributes all pairs of its neighbors, cost sum_w C(deg w, 2).
int max_common_neighbors(const Graph& g);

// One entry per vertex pair sharing at least one neighbor, sorted by (u, v).
// Shared by max_common_neighbors and the small-set density certificate.
struct CommonNeighborPair {
  int u;
  int v;
  int count;
};
std::vector<CommonNeighborPair> common_neighbor_pairs(const Graph& g);

// Edge-list text format: "n m" then m lines "u v" (u < v), sorted
// lexicographically, single-space separated, trailing newline. Auxiliary
// edges are recorded after the edge block as "# aux u v" lines.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace rasym
