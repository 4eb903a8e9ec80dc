#include "rasym/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "rasym/errors.hpp"
#include "rasym/permutation.hpp"

namespace rasym {

namespace {

std::uint64_t fnv_absorb(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

VertexSet::VertexSet(int n, std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= n) {
      throw DomainError("VertexSet: member out of range [0, n)");
    }
    if (i > 0 && members_[i] == members_[i - 1]) {
      throw DomainError("VertexSet: duplicate member");
    }
  }
}

bool VertexSet::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  return from_edges(n, std::move(edges), {});
}

Graph Graph::from_edges(int n, std::vector<Edge> edges, std::vector<Edge> aux_edges) {
  if (n < 0) throw DomainError("Graph: vertex count must be nonnegative");
  Graph g;
  g.n_ = n;
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u == e.v) throw DomainError("Graph: self-loop rejected");
    if (e.u < 0 || e.v >= n) throw DomainError("Graph: endpoint out of range");
    if (i > 0 && e == edges[i - 1]) throw DomainError("Graph: duplicate edge rejected");
  }
  g.edges_ = std::move(edges);

  std::sort(aux_edges.begin(), aux_edges.end());
  for (const Edge& e : aux_edges) {
    if (!std::binary_search(g.edges_.begin(), g.edges_.end(), e)) {
      throw DomainError("Graph: auxiliary edge is not an edge of the graph");
    }
  }
  g.aux_edges_ = std::move(aux_edges);

  g.adj_.assign(n, {});
  for (const Edge& e : g.edges_) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

  if (n <= kDenseLimit && n > 0) {
    g.row_words_ = (n + 63) / 64;
    g.rows_.assign(static_cast<std::size_t>(n) * g.row_words_, 0);
    for (const Edge& e : g.edges_) {
      g.rows_[static_cast<std::size_t>(e.u) * g.row_words_ + e.v / 64] |=
          1ULL << (e.v % 64);
      g.rows_[static_cast<std::size_t>(e.v) * g.row_words_ + e.u / 64] |=
          1ULL << (e.u % 64);
    }
  }

  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv_absorb(h, static_cast<std::uint64_t>(n));
  h = fnv_absorb(h, static_cast<std::uint64_t>(g.edges_.size()));
  for (const Edge& e : g.edges_) {
    h = fnv_absorb(h, static_cast<std::uint64_t>(e.u));
    h = fnv_absorb(h, static_cast<std::uint64_t>(e.v));
  }
  g.hash_ = h;
  return g;
}

Graph Graph::complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_edges(n, std::move(edges));
}

Graph Graph::cycle(int n) {
  if (n < 3) throw DomainError("cycle: need n >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return from_edges(n, std::move(edges));
}

Graph Graph::path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return from_edges(n, std::move(edges));
}

Graph Graph::star(int leaves) {
  std::vector<Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return from_edges(leaves + 1, std::move(edges));
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  if (dense()) {
    return (rows_[static_cast<std::size_t>(u) * row_words_ + v / 64] >>
            (v % 64)) & 1;
  }
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Rational dist(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw DomainError("dist: graphs have different vertex counts");
  long long sym_diff = 0;
  for (const Edge& e : g.edges()) {
    if (!h.has_edge(e.u, e.v)) ++sym_diff;
  }
  for (const Edge& e : h.edges()) {
    if (!g.has_edge(e.u, e.v)) ++sym_diff;
  }
  return Rational(sym_diff, 2);
}

long long dist_perm(const Graph& g, const Permutation& pi) {
  if (g.n() != pi.n()) throw DomainError("dist_perm: dimension mismatch");
  long long count = 0;
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(pi(e.u), pi(e.v))) ++count;
  }
  return count;
}

Graph apply_perm(const Graph& g, const Permutation& pi) {
  if (g.n() != pi.n()) throw DomainError("apply_perm: dimension mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) edges.emplace_back(pi(e.u), pi(e.v));
  return Graph::from_edges(g.n(), std::move(edges));
}

long long covered_edges(const Graph& g, const VertexSet& s) {
  long long count = 0;
  for (int u : s.members()) {
    for (int w : g.neighbors(u)) {
      // count each covered edge once: at its smaller in-S endpoint
      if (s.contains(w) && w < u) continue;
      ++count;
    }
  }
  return count;
}

long long induced_edge_count(const Graph& g, const VertexSet& s) {
  long long count = 0;
  for (int u : s.members()) {
    for (int w : g.neighbors(u)) {
      if (w > u && s.contains(w)) ++count;
    }
  }
  return count;
}

DegreeStats degree_stats(const Graph& g) {
  if (g.n() < 1) throw DomainError("degree_stats: need n >= 1");
  DegreeStats stats;
  stats.min = g.degree(0);
  stats.max = g.degree(0);
  for (int v = 1; v < g.n(); ++v) {
    stats.min = std::min(stats.min, g.degree(v));
    stats.max = std::max(stats.max, g.degree(v));
  }
  stats.average = Rational(2 * g.m(), g.n());
  return stats;
}

std::vector<CommonNeighborPair> common_neighbor_pairs(const Graph& g) {
  std::vector<std::uint64_t> keys;
  for (int w = 0; w < g.n(); ++w) {
    const auto& nbrs = g.neighbors(w);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        keys.push_back(static_cast<std::uint64_t>(nbrs[i]) *
                           static_cast<std::uint64_t>(g.n()) +
                       static_cast<std::uint64_t>(nbrs[j]));
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<CommonNeighborPair> result;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    result.push_back({static_cast<int>(keys[i] / g.n()),
                      static_cast<int>(keys[i] % g.n()),
                      static_cast<int>(j - i)});
    i = j;
  }
  return result;
}

int max_common_neighbors(const Graph& g) {
  if (g.n() < 2) throw DomainError("max_common_neighbors: need n >= 2");
  int best = 0;
  for (const auto& p : common_neighbor_pairs(g)) best = std::max(best, p.count);
  return best;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  for (const Edge& e : g.aux_edges()) out << "# aux " << e.u << ' ' << e.v << '\n';
}

namespace {

long long parse_count(const std::string& token, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    long long value = std::stoll(token, &pos);
    if (pos != token.size() || value < 0) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw IoError("edge list line " + std::to_string(line_no) + ": bad " +
                  what + " '" + token + "'");
  }
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw IoError("edge list line 1: missing header");
  ++line_no;
  std::istringstream header(line);
  std::string tok_n, tok_m, extra;
  if (!(header >> tok_n >> tok_m) || (header >> extra)) {
    throw IoError("edge list line 1: header must be 'n m'");
  }
  const long long n = parse_count(tok_n, 1, "vertex count");
  const long long m = parse_count(tok_m, 1, "edge count");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw IoError("edge list line " + std::to_string(line_no + 1) +
                    ": expected " + std::to_string(m) + " edges, got " +
                    std::to_string(i));
    }
    ++line_no;
    std::istringstream row(line);
    std::string tok_u, tok_v;
    if (!(row >> tok_u >> tok_v) || (row >> extra)) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": expected 'u v'");
    }
    const long long u = parse_count(tok_u, line_no, "endpoint");
    const long long v = parse_count(tok_v, line_no, "endpoint");
    if (u >= n || v >= n) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": endpoint out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      throw IoError("edge list line " + std::to_string(line_no) + ": self-loop");
    }
    if (u > v) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": endpoints must satisfy u < v");
    }
    Edge e(static_cast<int>(u), static_cast<int>(v));
    if (!edges.empty() && !(edges.back() < e)) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": edges must be sorted and duplicate-free");
    }
    edges.push_back(e);
  }

  std::vector<Edge> aux;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string hash_tok, aux_tok, tok_u, tok_v;
    if (!(row >> hash_tok >> aux_tok >> tok_u >> tok_v) || hash_tok != "#" ||
        aux_tok != "aux" || (row >> extra)) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": expected '# aux u v' or end of file");
    }
    const long long u = parse_count(tok_u, line_no, "endpoint");
    const long long v = parse_count(tok_v, line_no, "endpoint");
    if (u >= n || v >= n || u == v) {
      throw IoError("edge list line " + std::to_string(line_no) +
                    ": bad auxiliary edge");
    }
    aux.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  try {
    return Graph::from_edges(static_cast<int>(n), std::move(edges), std::move(aux));
  } catch (const DomainError& e) {
    throw IoError(std::string("edge list: ") + e.what());
  }
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_edge_list(in);
}

}  // namespace rasym
