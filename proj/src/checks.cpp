#include "rasym/checks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "rasym/errors.hpp"
#include "rasym/permutation.hpp"
#include "rasym/rng.hpp"

namespace rasym {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::statistical_pass:
      return "statistical-pass";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::skipped:
      return "skipped";
  }
  return "unknown";
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["name"] = name;
  doc["verdict"] = to_string(verdict);
  doc["stats"] = stats.is_null() ? nlohmann::ordered_json::object() : stats;
  doc["tolerance"] = tolerance;
  doc["samples"] = samples;
  doc["seed"] = seed;
  doc["note"] = note;
  return doc;
}

namespace {

nlohmann::ordered_json rational_json(const Rational& r) {
  return nlohmann::ordered_json::array({r.numerator(), r.denominator()});
}

}  // namespace

CheckReport check_avg_degree(const Graph& g, double p, int d, double slack) {
  CheckReport report;
  report.name = "avg-degree";
  report.tolerance = slack;
  const double target = p * g.n();
  const DegreeStats stats = degree_stats(g);
  report.stats["n"] = g.n();
  report.stats["m"] = g.m();
  report.stats["d"] = d;
  report.stats["p"] = p;
  report.stats["avg_degree"] = rational_json(stats.average);
  report.stats["target"] = target;
  if (target <= 0.0) {
    report.verdict = Verdict::skipped;
    report.note = "pn = 0: the deviation bound is degenerate";
    return report;
  }
  const double bound = slack * std::sqrt(target);
  const double deviation = std::abs(to_double(stats.average) - target);
  report.stats["deviation"] = deviation;
  report.stats["bound"] = bound;
  report.verdict = deviation <= bound ? Verdict::pass : Verdict::fail;
  return report;
}

CheckReport check_common_neighbors(const Graph& g) {
  CheckReport report;
  report.name = "common-neighbors";
  const int max_common = max_common_neighbors(g);
  report.stats["max_common_neighbors"] = max_common;
  report.verdict = max_common <= 2 ? Verdict::pass : Verdict::fail;
  return report;
}

namespace {

// Connected-set enumeration with an exclusion frontier: each connected vertex
// set whose minimum is the root is extended only by unseen vertices larger
// than the root, so every connected set is visited exactly once.
class DenseSetSearch {
 public:
  DenseSetSearch(const Graph& g, int size_limit, long long node_budget)
      : g_(g), limit_(size_limit), budget_(node_budget), seen_(g.n(), false),
        in_set_(g.n(), false) {}

  std::optional<std::vector<int>> run(long long* visited_out) {
    for (int root = 0; root < g_.n() && !violator_; ++root) {
      seen_[root] = true;
      set_.push_back(root);
      in_set_[root] = true;
      edges_ = 0;
      visit_current();
      std::vector<int> frontier;
      for (int u : g_.neighbors(root)) {
        if (u > root) {
          frontier.push_back(u);
          seen_[u] = true;
        }
      }
      extend(frontier);
      for (int u : frontier) seen_[u] = false;
      seen_[root] = false;
      in_set_[root] = false;
      set_.pop_back();
    }
    if (visited_out) *visited_out = visited_;
    return violator_;
  }

 private:
  void visit_current() {
    ++visited_;
    if (visited_ > budget_) {
      throw BudgetError("small-set density: enumeration visited " +
                            std::to_string(visited_) +
                            " connected sets, past the node budget of " +
                            std::to_string(budget_),
                        BigInt(visited_));
    }
    if (edges_ > 3 * static_cast<long long>(set_.size())) violator_ = set_;
  }

  void extend(const std::vector<int>& ext) {
    if (static_cast<int>(set_.size()) >= limit_ || violator_) return;
    for (std::size_t i = 0; i < ext.size() && !violator_; ++i) {
      const int w = ext[i];
      long long gained = 0;
      std::vector<int> frontier(ext.begin() + i + 1, ext.end());
      for (int u : g_.neighbors(w)) {
        if (in_set_[u]) ++gained;
        if (u > root_of(set_) && !seen_[u]) {
          frontier.push_back(u);
          seen_[u] = true;
        }
      }
      set_.push_back(w);
      in_set_[w] = true;
      edges_ += gained;
      visit_current();
      extend(frontier);
      edges_ -= gained;
      in_set_[w] = false;
      set_.pop_back();
      for (std::size_t j = ext.size() - i - 1; j < frontier.size(); ++j) {
        seen_[frontier[j]] = false;
      }
    }
  }

  static int root_of(const std::vector<int>& set) { return set.front(); }

  const Graph& g_;
  const int limit_;
  const long long budget_;
  std::vector<bool> seen_;
  std::vector<bool> in_set_;
  std::vector<int> set_;
  long long edges_ = 0;
  long long visited_ = 0;
  std::optional<std::vector<int>> violator_;
};

}  // namespace

std::optional<std::vector<int>> find_small_dense_set(const Graph& g,
                                                     int size_limit,
                                                     long long node_budget,
                                                     long long* visited) {
  if (size_limit < 0) throw DomainError("find_small_dense_set: negative limit");
  DenseSetSearch search(g, std::min(size_limit, g.n()), node_budget);
  return search.run(visited);
}

namespace {

struct WeightedPair {
  int u;
  int v;
  int count;
};

// Upper bound, over vertex sets of size <= capacity, on the total capped
// pair weight: exact per-component subset brute force for small components,
// an analytic bound for large ones, and a knapsack across components. The
// analytic bound is sound because j vertices inside one component induce at
// most j - 1 + (cyclomatic number) pairs, each of weight <= the component
// maximum.
long long max_pair_packing(const std::vector<WeightedPair>& pairs,
                           int capacity, int cap) {
  constexpr int kMaxComponent = 16;

  // index the involved vertices
  std::vector<int> verts;
  for (const auto& p : pairs) {
    verts.push_back(p.u);
    verts.push_back(p.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto index_of = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                            verts.begin());
  };

  // connected components of the pair graph, by union-find
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : pairs) {
    parent[find(index_of(p.u))] = find(index_of(p.v));
  }
  std::vector<std::vector<int>> comp_verts(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    comp_verts[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  }

  std::vector<long long> dp(capacity + 1, 0);
  for (const auto& members : comp_verts) {
    if (members.empty()) continue;
    const int c = static_cast<int>(members.size());
    std::vector<int> slot(verts.size(), -1);
    for (int i = 0; i < c; ++i) slot[members[i]] = i;
    std::vector<std::pair<std::pair<int, int>, long long>> local;
    long long max_weight = 0;
    for (const auto& p : pairs) {
      const int a = slot[index_of(p.u)];
      const int b = slot[index_of(p.v)];
      if (a >= 0 && b >= 0) {
        const long long w = std::min(p.count, cap) - 2;
        local.push_back({{a, b}, w});
        max_weight = std::max(max_weight, w);
      }
    }
    // best packing using exactly j of this component's vertices
    std::vector<long long> best(std::min(c, capacity) + 1, 0);
    if (c <= kMaxComponent) {
      for (std::uint32_t mask = 1; mask < (1u << c); ++mask) {
        const int size = std::popcount(mask);
        if (size > capacity) continue;
        long long weight = 0;
        for (const auto& [pair, w] : local) {
          if ((mask >> pair.first & 1) && (mask >> pair.second & 1)) weight += w;
        }
        best[size] = std::max(best[size], weight);
      }
    } else {
      const long long excess =
          static_cast<long long>(local.size()) - c + 1;  // cyclomatic number
      for (int j = 2; j < static_cast<int>(best.size()); ++j) {
        const long long induced =
            std::min<long long>({j - 1 + std::max<long long>(excess, 0),
                                 static_cast<long long>(local.size()),
                                 static_cast<long long>(j) * (j - 1) / 2});
        best[j] = max_weight * induced;
      }
    }
    for (int x = capacity; x >= 0; --x) {
      for (int j = 1; j <= std::min<int>(x, static_cast<int>(best.size()) - 1); ++j) {
        dp[x] = std::max(dp[x], dp[x - j] + best[j]);
      }
    }
  }
  return dp[capacity];
}

}  // namespace

bool density_certificate(const Graph& g, int size_limit) {
  const int limit = std::min(size_limit, g.n());
  if (limit <= 7) return true;  // e(S) <= C(s,2) <= 3s for s <= 7
  if (limit > 16) return false;

  std::vector<WeightedPair> heavy;
  for (const auto& p : common_neighbor_pairs(g)) {
    if (p.count >= 3) heavy.push_back({p.u, p.v, p.count});
  }
  if (heavy.empty()) return true;

  for (int s = 8; s <= limit; ++s) {
    const long long need = 15LL * s + 12 - static_cast<long long>(s) * (s - 1);
    if (max_pair_packing(heavy, s, s - 2) >= need) return false;
  }
  return true;
}

CheckReport check_small_set_density(const Graph& g, int size_limit,
                                    long long node_budget) {
  if (size_limit < 0 || size_limit > g.n()) {
    throw DomainError("check_small_set_density: need 0 <= size_limit <= n");
  }
  CheckReport report;
  report.name = "small-set-density";
  report.stats["size_limit"] = size_limit;

  if (size_limit <= 7) {
    report.verdict = Verdict::pass;
    report.stats["method"] = "arithmetic";
    report.note = "sets of at most 7 vertices cannot exceed 3|S| edges";
    return report;
  }
  if (density_certificate(g, size_limit)) {
    report.verdict = Verdict::pass;
    report.stats["method"] = "common-neighbor-certificate";
    return report;
  }
  report.stats["method"] = "enumeration";
  long long visited = 0;
  try {
    const auto violator = find_small_dense_set(g, size_limit, node_budget, &visited);
    report.stats["nodes_visited"] = visited;
    if (violator) {
      report.verdict = Verdict::fail;
      report.stats["violator"] = *violator;
      report.stats["violator_size"] = violator->size();
      report.stats["induced_edges"] =
          induced_edge_count(g, VertexSet(g.n(), *violator));
    } else {
      report.verdict = Verdict::pass;
    }
  } catch (const BudgetError& e) {
    report.verdict = Verdict::inconclusive;
    report.note = e.what();
  }
  return report;
}

CheckReport mc_covered_edges(int n, double p, int k, long long trials,
                             std::uint64_t seed) {
  if (n < 1 || k < 0 || k > n) throw DomainError("mc_covered_edges: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mc_covered_edges: need 0 <= p <= 1");
  if (trials < 1000) throw DomainError("mc_covered_edges: need trials >= 1000");

  const long long p_size =
      static_cast<long long>(k) * (k - 1) / 2 + static_cast<long long>(k) * (n - k);
  const double expectation = p * static_cast<double>(p_size);
  const double sigma = std::sqrt(p * (1.0 - p) * static_cast<double>(p_size));

  // S = {0..k-1}; each unordered pair is drawn independently, exactly as in
  // the generator's reference path, and only covered pairs are counted.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, "covered-trial", static_cast<std::uint64_t>(t));
    long long covered = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p) && u < k) ++covered;
      }
    }
    sum += static_cast<double>(covered);
    sum_sq += static_cast<double>(covered) * static_cast<double>(covered);
  }
  const double mean = sum / static_cast<double>(trials);
  const double variance =
      std::max(0.0, sum_sq / static_cast<double>(trials) - mean * mean);
  const double stderr_mean = sigma / std::sqrt(static_cast<double>(trials));

  CheckReport report;
  report.name = "covered-edges-mean";
  report.tolerance = 4.0;
  report.samples = trials;
  report.seed = seed;
  report.stats["n"] = n;
  report.stats["k"] = k;
  report.stats["p"] = p;
  report.stats["pair_count"] = p_size;
  report.stats["expected_mean"] = expectation;
  report.stats["empirical_mean"] = mean;
  report.stats["expected_stddev"] = sigma;
  report.stats["empirical_stddev"] = std::sqrt(variance);
  report.stats["stderr"] = stderr_mean;
  if (sigma == 0.0) {
    report.verdict = mean == expectation ? Verdict::pass : Verdict::fail;
  } else {
    report.verdict = std::abs(mean - expectation) <= 4.0 * stderr_mean
                         ? Verdict::statistical_pass
                         : Verdict::fail;
  }
  return report;
}

Rational placement_closed_form(long long p_size, long long m_s, long long f) {
  if (m_s == 0 || m_s == p_size) return Rational(0);
  return Rational(m_s) * Rational(p_size - f, p_size) *
         Rational(p_size - m_s, p_size - 1);
}

namespace {

// The pairs covered by the support of pi, with the index permutation pi
// induces on them. P is closed under pi because pi fixes everything else.
struct PairSystem {
  long long p_size = 0;
  std::vector<int> image;

  explicit PairSystem(const Permutation& pi) {
    const int n = pi.n();
    std::vector<bool> in_s(n, false);
    for (int v : pi.support()) in_s[v] = true;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> pair_index(static_cast<std::size_t>(n) * n, -1);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (in_s[u] || in_s[v]) {
          pair_index[static_cast<std::size_t>(u) * n + v] =
              static_cast<int>(pairs.size());
          pairs.emplace_back(u, v);
        }
      }
    }
    p_size = static_cast<long long>(pairs.size());
    image.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const int a = std::min(pi(pairs[i].first), pi(pairs[i].second));
      const int b = std::max(pi(pairs[i].first), pi(pairs[i].second));
      image[i] = pair_index[static_cast<std::size_t>(a) * n + b];
    }
  }

  // Sum of X over all C(p_size, m_s) placements of m_s edges.
  long long exhaustive_total(int m_s, long long* combos_out) const {
    std::vector<bool> placed(image.size());
    std::vector<int> combo(m_s);
    std::iota(combo.begin(), combo.end(), 0);
    long long total_x = 0;
    long long combos = 0;
    for (;;) {
      std::fill(placed.begin(), placed.end(), false);
      for (int idx : combo) placed[idx] = true;
      for (int idx : combo) {
        if (!placed[image[idx]]) ++total_x;
      }
      ++combos;
      int i = m_s - 1;
      while (i >= 0 && combo[i] == p_size - m_s + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < m_s; ++j) combo[j] = combo[j - 1] + 1;
    }
    if (combos_out) *combos_out = combos;
    return total_x;
  }
};

}  // namespace

CheckReport placement_exact_sweep(int max_pair_count) {
  if (max_pair_count < 1 || max_pair_count > 20) {
    throw DomainError("placement_exact_sweep: need 1 <= max pair count <= 20");
  }
  CheckReport report;
  report.name = "placement-exact-sweep";
  long long cells = 0;
  long long mismatches = 0;
  for (int n = 2; 2 * n - 3 <= max_pair_count; ++n) {
    for (int k = 2; k <= n; ++k) {
      const long long p_size = static_cast<long long>(k) * (k - 1) / 2 +
                               static_cast<long long>(k) * (n - k);
      if (p_size > max_pair_count) break;
      std::vector<int> support(k);
      std::iota(support.begin(), support.end(), 0);
      detail::for_each_derangement(
          std::span<const int>(support), [&](std::span<const int> images) {
            std::vector<int> mapping(n);
            std::iota(mapping.begin(), mapping.end(), 0);
            for (int i = 0; i < k; ++i) mapping[i] = images[i];
            const Permutation pi = Permutation::from_mapping(std::move(mapping));
            const PairSystem system(pi);
            const long long f = pi.pair_fixpoints();
            for (int m_s = 0; m_s <= system.p_size; ++m_s) {
              long long combos = 0;
              const long long total = system.exhaustive_total(m_s, &combos);
              const Rational exact_mean(total, combos);
              const Rational closed = placement_closed_form(system.p_size, m_s, f);
              ++cells;
              if (exact_mean != closed) ++mismatches;
            }
            return true;
          });
    }
  }
  report.stats["max_pair_count"] = max_pair_count;
  report.stats["cells_checked"] = cells;
  report.stats["mismatches"] = mismatches;
  report.verdict = mismatches == 0 ? Verdict::pass : Verdict::fail;
  return report;
}

CheckReport mc_placement_expectation(const DistanceExperiment& exp,
                                  const Permutation& pi, std::uint64_t seed) {
  if (pi.n() != exp.n || pi.k() != exp.k) {
    throw DomainError(
        "mc_placement_expectation: pi must move exactly the k vertices of S and "
        "fix the rest");
  }
  if (exp.k < 2) throw DomainError("mc_placement_expectation: need k >= 2");
  if (exp.trials < 1000) throw DomainError("mc_placement_expectation: need trials >= 1000");

  const PairSystem system(pi);
  const long long p_size = system.p_size;
  if (exp.m_s < 0 || exp.m_s > p_size) {
    throw DomainError("mc_placement_expectation: need 0 <= m_s <= |P|");
  }
  const std::vector<int>& image = system.image;
  const long long f = pi.pair_fixpoints();
  const Rational closed = placement_closed_form(p_size, exp.m_s, f);

  CheckReport report;
  report.name = "placement-expectation";
  report.tolerance = 4.0;
  report.samples = exp.trials;
  report.seed = seed;
  report.stats["n"] = exp.n;
  report.stats["k"] = exp.k;
  report.stats["pair_count"] = p_size;
  report.stats["m_s"] = exp.m_s;
  report.stats["pair_fixpoints"] = f;
  report.stats["closed_form"] = rational_json(closed);

  // Monte Carlo placements
  Rng rng = Rng::stream(seed, "placement");
  std::vector<int> pool(image.size());
  std::vector<bool> placed(image.size());
  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < exp.trials; ++t) {
    std::iota(pool.begin(), pool.end(), 0);
    std::fill(placed.begin(), placed.end(), false);
    for (int i = 0; i < exp.m_s; ++i) {
      std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      placed[pool[i]] = true;
    }
    long long x = 0;
    for (int i = 0; i < exp.m_s; ++i) {
      if (!placed[image[pool[i]]]) ++x;
    }
    sum += static_cast<double>(x);
    sum_sq += static_cast<double>(x) * static_cast<double>(x);
  }
  const double mean = sum / static_cast<double>(exp.trials);
  const double variance =
      std::max(0.0, sum_sq / static_cast<double>(exp.trials) - mean * mean);
  const double stderr_mean =
      std::sqrt(variance / static_cast<double>(exp.trials));
  report.stats["empirical_mean"] = mean;
  report.stats["stderr"] = stderr_mean;

  const double closed_f = to_double(closed);
  bool ok = std::abs(mean - closed_f) <= 4.0 * stderr_mean ||
            mean == closed_f;  // zero-variance experiments must agree exactly

  // exhaustive oracle over all placements when the space is small
  BigInt placements = 1;
  for (long long i = 1; i <= exp.m_s; ++i) {
    placements *= (p_size - exp.m_s + i);
    placements /= i;
  }
  if (placements <= BigInt(1'000'000)) {
    long long combos = 0;
    const long long total_x = system.exhaustive_total(exp.m_s, &combos);
    const Rational exact_mean(total_x, combos);
    report.stats["exhaustive_placements"] = combos;
    report.stats["exhaustive_mean"] = rational_json(exact_mean);
    if (exact_mean != closed) ok = false;
    report.stats["exhaustive_matches"] = exact_mean == closed;
  }

  report.verdict = ok ? Verdict::statistical_pass : Verdict::fail;
  return report;
}

CheckReport mc_edge_probability(const GnpdParams& params,
                                const std::vector<Edge>& forced, Edge e,
                                long long target_conditional, std::uint64_t seed,
                                long long trial_cap) {
  auto check_edge = [&](const Edge& edge) {
    if (edge.u < 0 || edge.v >= params.n || edge.u == edge.v) {
      throw DomainError("mc_edge_probability: edge endpoints out of range");
    }
  };
  check_edge(e);
  for (const Edge& fe : forced) {
    check_edge(fe);
    if (fe == e) throw DomainError("mc_edge_probability: e must not be in F");
  }
  if (target_conditional < 1000) {
    throw DomainError("mc_edge_probability: need a conditional target >= 1000");
  }

  long long trials = 0;
  long long conditional = 0;
  long long hits = 0;
  while (conditional < target_conditional && trials < trial_cap) {
    GnpdParams trial_params = params;
    trial_params.seed = Rng::derive(seed, "edge-prob-trial",
                                    static_cast<std::uint64_t>(trials));
    const Graph g = gen_gnpd(trial_params);
    ++trials;
    bool all_present = true;
    for (const Edge& fe : forced) {
      if (!g.has_edge(fe.u, fe.v)) {
        all_present = false;
        break;
      }
    }
    if (!all_present) continue;
    ++conditional;
    if (g.has_edge(e.u, e.v)) ++hits;
  }

  CheckReport report;
  report.name = "edge-probability-sandwich";
  report.tolerance = 4.0;
  report.samples = conditional;
  report.seed = seed;
  report.stats["n"] = params.n;
  report.stats["p"] = params.p;
  report.stats["d"] = params.d;
  report.stats["forced_edges"] = forced.size();
  report.stats["trials"] = trials;
  report.stats["conditional_samples"] = conditional;
  if (conditional < target_conditional) {
    report.verdict = Verdict::inconclusive;
    report.note = "conditioning event too rare within the trial cap";
    return report;
  }
  const double estimate =
      static_cast<double>(hits) / static_cast<double>(conditional);
  const double width =
      4.0 * std::sqrt(std::max(estimate * (1.0 - estimate), 1e-12) /
                      static_cast<double>(conditional));
  const double lower = params.p - width;
  const double upper = params.p + 2.0 * params.d / (params.n - 1.0) + width;
  report.stats["estimate"] = estimate;
  report.stats["lower"] = lower;
  report.stats["upper"] = upper;
  report.stats["width"] = width;
  report.verdict = (estimate >= lower && estimate <= upper)
                       ? Verdict::statistical_pass
                       : Verdict::fail;
  return report;
}

CheckReport check_small_k_bound(const Graph& g, double p, int d, int k,
                                long long samples, std::uint64_t seed,
                                const SearchParams& search) {
  if (d < 1) throw DomainError("check_small_k_bound: need d >= 1");
  if (k < 2 || static_cast<long long>(k) * d * d > g.n()) {
    throw DomainError("check_small_k_bound: need 2 <= k <= n/d^2");
  }

  CheckReport report;
  report.name = "small-k-bound";
  report.samples = samples;
  report.seed = seed;
  const long long bound = static_cast<long long>(d - 8) * k;
  report.stats["k"] = k;
  report.stats["d"] = d;
  report.stats["bound"] = bound;

  // prerequisites of the pointwise bound
  const CheckReport avg = check_avg_degree(g, p, d);
  const CheckReport common = check_common_neighbors(g);
  const CheckReport density =
      check_small_set_density(g, static_cast<int>(g.n() / (static_cast<long long>(d) * d)));
  const bool prerequisites_ok = avg.verdict == Verdict::pass &&
                        common.verdict == Verdict::pass &&
                        density.verdict == Verdict::pass;
  report.stats["prerequisites"] = {{"avg_degree", to_string(avg.verdict)},
                                   {"common_neighbors", to_string(common.verdict)},
                                   {"small_set_density", to_string(density.verdict)}};
  report.stats["prerequisites_hold"] = prerequisites_ok;

  if (d <= 8) {
    report.verdict = Verdict::pass;
    report.note = "d <= 8 makes the (d-8)k bound vacuous";
    return report;
  }

  // only edges covered by the support can move, so the distance is evaluated
  // over those edges alone
  std::vector<int> support_slot(g.n(), -1);
  auto localized_dist = [&](const Permutation& pi) {
    for (std::size_t i = 0; i < pi.support().size(); ++i) {
      support_slot[pi.support()[i]] = static_cast<int>(i);
    }
    long long bad = 0;
    for (int u : pi.support()) {
      for (int w : g.neighbors(u)) {
        if (support_slot[w] >= 0 && w < u) continue;
        if (!g.has_edge(pi(u), pi(w))) ++bad;
      }
    }
    for (int u : pi.support()) support_slot[u] = -1;
    return bad;
  };

  Rng rng = Rng::stream(seed, "small-k");
  long long violations = 0;
  long long min_observed = std::numeric_limits<long long>::max();
  for (long long t = 0; t < samples; ++t) {
    const Permutation pi = sample_k_perm(g.n(), k, rng);
    const long long dist = localized_dist(pi);
    min_observed = std::min(min_observed, dist);
    if (dist < bound) ++violations;
  }
  SearchParams heuristic = search;
  heuristic.seed = Rng::derive(seed, "small-k-heuristic");
  const DeltaEntry found = heuristic_delta_k(g, k, heuristic);
  min_observed = std::min(min_observed, found.dist);
  if (found.dist < bound) ++violations;

  report.stats["sampled_min_dist"] = min_observed;
  report.stats["heuristic_dist"] = found.dist;
  report.stats["violations"] = violations;
  report.verdict = violations == 0 ? Verdict::statistical_pass : Verdict::fail;
  return report;
}

}  // namespace rasym
