#include "rasym/asymmetry.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numeric>

#include "rasym/errors.hpp"
#include "rasym/rng.hpp"

namespace rasym {

namespace {

void require_normalizable(const Graph& g) {
  if (g.m() < 1) {
    throw DomainError("delta is undefined for graphs without edges (m = 0)");
  }
}

Rational make_delta(long long dist, int k, const Graph& g) {
  return Rational(dist * g.n(), static_cast<long long>(k) * g.m());
}

Permutation materialize(int n, std::span<const int> support,
                        std::span<const int> images) {
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) mapping[support[i]] = images[i];
  return Permutation::from_mapping(std::move(mapping));
}

// Edges covered by the current support, precomputed once per subset so a
// derangement evaluation is a flat pass of adjacency probes.
struct CoveredEdge {
  int ia;     // support index of one endpoint
  int other;  // the other endpoint's label (used when ib < 0)
  int ib;     // support index of the other endpoint, or -1
};

class SubsetEvaluator {
 public:
  explicit SubsetEvaluator(const Graph& g)
      : g_(g), support_index_(g.n(), -1) {}

  void load(std::span<const int> support) {
    if (!last_support_.empty()) {
      for (int v : last_support_) support_index_[v] = -1;
    }
    last_support_.assign(support.begin(), support.end());
    for (std::size_t i = 0; i < last_support_.size(); ++i) {
      support_index_[last_support_[i]] = static_cast<int>(i);
    }
    covered_.clear();
    for (std::size_t i = 0; i < last_support_.size(); ++i) {
      const int u = last_support_[i];
      for (int w : g_.neighbors(u)) {
        const int iw = support_index_[w];
        if (iw >= 0 && w < u) continue;  // already listed from w's side
        covered_.push_back({static_cast<int>(i), w, iw});
      }
    }
  }

  bool same_support(std::span<const int> support) const {
    return std::ranges::equal(last_support_, support);
  }

  // Number of covered edges mapped to non-edges; stops early once the count
  // reaches `cap` (a result >= cap cannot improve the running minimum).
  long long eval(std::span<const int> images, long long cap) const {
    long long bad = 0;
    for (const CoveredEdge& e : covered_) {
      const int a = images[e.ia];
      const int b = e.ib >= 0 ? images[e.ib] : e.other;
      if (!g_.has_edge(a, b)) {
        if (++bad >= cap) return bad;
      }
    }
    return bad;
  }

 private:
  const Graph& g_;
  std::vector<int> support_index_;
  std::vector<int> last_support_;
  std::vector<CoveredEdge> covered_;
};

}  // namespace

Rational AsymmetryProfile::overall_delta() const {
  if (entries.empty()) throw DomainError("profile has no entries");
  Rational best = entries.front().delta;
  for (const DeltaEntry& e : entries) best = std::min(best, e.delta);
  return best;
}

bool AsymmetryProfile::all_exact() const {
  return std::ranges::all_of(entries, [](const DeltaEntry& e) { return e.exact; });
}

const DeltaEntry* AsymmetryProfile::entry(int k) const {
  for (const DeltaEntry& e : entries) {
    if (e.k == k) return &e;
  }
  return nullptr;
}

nlohmann::ordered_json AsymmetryProfile::to_json() const {
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(graph_hash));
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["m"] = m;
  doc["graph_hash"] = hash_hex;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const DeltaEntry& e : entries) {
    doc["entries"].push_back({{"k", e.k},
                              {"delta_num", e.delta.numerator()},
                              {"delta_den", e.delta.denominator()},
                              {"dist", e.dist},
                              {"witness_cycles", e.witness.cycle_notation()},
                              {"exact", e.exact}});
  }
  const Rational overall = overall_delta();
  doc["overall"] = {{"delta_num", overall.numerator()},
                    {"delta_den", overall.denominator()}};
  return doc;
}

DeltaEntry exact_delta_k(const Graph& g, int k, unsigned long long budget) {
  require_normalizable(g);
  if (k < 2 || k > g.n()) throw DomainError("exact_delta_k: need 2 <= k <= n");
  const BigInt space = count_k_perms(g.n(), k);
  if (space > BigInt(budget)) {
    throw BudgetError("exact_delta_k: " + space.str() +
                          " k-permutations exceed the budget of " +
                          std::to_string(budget) +
                          "; use the heuristic search instead",
                      space);
  }

  SubsetEvaluator evaluator(g);
  long long best = std::numeric_limits<long long>::max();
  std::vector<int> best_support;
  std::vector<int> best_images;
  for_each_k_perm(g.n(), k, [&](std::span<const int> support,
                                std::span<const int> images) {
    if (!evaluator.same_support(support)) evaluator.load(support);
    const long long value = evaluator.eval(images, best);
    if (value < best) {
      best = value;
      best_support.assign(support.begin(), support.end());
      best_images.assign(images.begin(), images.end());
      if (best == 0) return false;  // the minimum cannot improve further
    }
    return true;
  });

  DeltaEntry entry;
  entry.k = k;
  entry.dist = best;
  entry.delta = make_delta(best, k, g);
  entry.witness = materialize(g.n(), best_support, best_images);
  entry.exact = true;
  return entry;
}

DeltaEntry exact_delta_2(const Graph& g) {
  require_normalizable(g);
  if (g.n() < 2) throw DomainError("exact_delta_2: need n >= 2");

  long long best = std::numeric_limits<long long>::max();
  int best_u = 0, best_v = 1;
  const int n = g.n();
  if (g.dense()) {
    const int words = g.row_words();
    for (int u = 0; u < n && best > 0; ++u) {
      const auto row_u = g.row(u);
      for (int v = u + 1; v < n; ++v) {
        const auto row_v = g.row(v);
        long long diff = 0;
        for (int w = 0; w < words; ++w) diff += std::popcount(row_u[w] ^ row_v[w]);
        if (g.has_edge(u, v)) diff -= 2;
        if (diff < best) {
          best = diff;
          best_u = u;
          best_v = v;
          if (best == 0) break;
        }
      }
    }
  } else {
    for (int u = 0; u < n && best > 0; ++u) {
      const auto& nu = g.neighbors(u);
      for (int v = u + 1; v < n; ++v) {
        const auto& nv = g.neighbors(v);
        // |N(u) xor N(v)|, then drop the {u,v} edge's two self-references
        long long diff = 0;
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nv.size()) {
          if (nu[i] == nv[j]) {
            ++i;
            ++j;
          } else if (nu[i] < nv[j]) {
            ++diff;
            ++i;
          } else {
            ++diff;
            ++j;
          }
        }
        diff += static_cast<long long>(nu.size() - i) +
                static_cast<long long>(nv.size() - j);
        if (g.has_edge(u, v)) diff -= 2;
        if (diff < best) {
          best = diff;
          best_u = u;
          best_v = v;
          if (best == 0) break;
        }
      }
    }
  }

  DeltaEntry entry;
  entry.k = 2;
  entry.dist = best;
  entry.delta = make_delta(best, 2, g);
  entry.witness = Permutation::transposition(n, best_u, best_v);
  entry.exact = true;
  return entry;
}

namespace {

// Annealing state: full mapping plus support bookkeeping for O(1) membership
// and O(1) uniform picks from either side of the partition.
struct AnnealState {
  std::vector<int> mapping;
  std::vector<int> inverse;
  std::vector<int> support;         // sorted not required during search
  std::vector<int> support_slot;    // v -> index in support, or -1
  std::vector<int> non_support;
  std::vector<int> non_support_slot;
  long long cost = 0;

  void init(const Permutation& pi) {
    mapping = pi.mapping();
    support = pi.support();
    support_slot.assign(mapping.size(), -1);
    non_support_slot.assign(mapping.size(), -1);
    non_support.clear();
    inverse.resize(mapping.size());
    for (int v = 0; v < static_cast<int>(mapping.size()); ++v) {
      inverse[mapping[v]] = v;
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      support_slot[support[i]] = static_cast<int>(i);
    }
    for (int v = 0; v < static_cast<int>(mapping.size()); ++v) {
      if (support_slot[v] < 0) {
        non_support_slot[v] = static_cast<int>(non_support.size());
        non_support.push_back(v);
      }
    }
  }
  bool in_support(int v) const { return support_slot[v] >= 0; }

  // s leaves the support, t enters it
  void swap_membership(int s, int t) {
    const int s_slot = support_slot[s];
    const int t_slot = non_support_slot[t];
    support[s_slot] = t;
    support_slot[t] = s_slot;
    support_slot[s] = -1;
    non_support[t_slot] = s;
    non_support_slot[s] = t_slot;
    non_support_slot[t] = -1;
  }
};

struct ImageChange {
  int vertex;
  int new_image;
};

// Up to three image reassignments per move.
using ChangeList = std::vector<ImageChange>;

long long full_cost(const Graph& g, const AnnealState& st) {
  long long bad = 0;
  for (int u : st.support) {
    for (int w : g.neighbors(u)) {
      if (st.in_support(w) && w < u) continue;
      if (!g.has_edge(st.mapping[u], st.mapping[w])) ++bad;
    }
  }
  return bad;
}

int changed_image(const ChangeList& changes, const AnnealState& st, int v) {
  for (const ImageChange& c : changes) {
    if (c.vertex == v) return c.new_image;
  }
  return st.mapping[v];
}

bool is_changed(const ChangeList& changes, int v) {
  for (const ImageChange& c : changes) {
    if (c.vertex == v) return true;
  }
  return false;
}

// Cost delta over edges incident to changed vertices; every affected edge is
// visited once. Fixed vertices keep their images, so only these edges can
// change status.
long long cost_delta(const Graph& g, const AnnealState& st, const ChangeList& changes) {
  long long delta = 0;
  for (std::size_t ci = 0; ci < changes.size(); ++ci) {
    const int x = changes[ci].vertex;
    for (int w : g.neighbors(x)) {
      bool w_changed = false;
      for (std::size_t cj = 0; cj < changes.size(); ++cj) {
        if (changes[cj].vertex == w) {
          w_changed = cj < ci;  // edge already visited from the earlier vertex
          break;
        }
      }
      if (w_changed) continue;
      const bool old_bad = !g.has_edge(st.mapping[x], st.mapping[w]);
      const bool new_bad =
          !g.has_edge(changed_image(changes, st, x), changed_image(changes, st, w));
      delta += static_cast<int>(new_bad) - static_cast<int>(old_bad);
    }
  }
  return delta;
}

void apply_changes(AnnealState& st, const ChangeList& changes) {
  for (const ImageChange& c : changes) st.mapping[c.vertex] = c.new_image;
  for (const ImageChange& c : changes) st.inverse[c.new_image] = c.vertex;
}

// Swap support vertex s (slot position) with non-support vertex t: t inherits
// s's place in the cycle structure and s becomes fixed.
bool propose_support_swap(const Graph& g, AnnealState& st, Rng& rng, ChangeList& out) {
  const int n = static_cast<int>(st.mapping.size());
  const int k = static_cast<int>(st.support.size());
  if (k >= n) return false;
  const int s = st.support[rng.below(k)];
  const int t = st.non_support[rng.below(st.non_support.size())];
  // a -> s -> b becomes a -> t -> b
  const int a = st.inverse[s];
  const int b = st.mapping[s];
  out.clear();
  if (a == s) return false;  // unreachable: a derangement never maps s to s
  out.push_back({a, t});
  out.push_back({t, b == s ? t : b});
  out.push_back({s, s});
  return true;
}

bool propose_image_swap(const AnnealState& st, Rng& rng, ChangeList& out) {
  const int k = static_cast<int>(st.support.size());
  if (k < 3) return false;
  const int i = static_cast<int>(rng.below(k));
  int j = static_cast<int>(rng.below(k - 1));
  if (j >= i) ++j;
  const int a = st.support[i];
  const int b = st.support[j];
  if (st.mapping[a] == b || st.mapping[b] == a) return false;  // would fix a point
  out.clear();
  out.push_back({a, st.mapping[b]});
  out.push_back({b, st.mapping[a]});
  return true;
}

bool propose_rotation(const AnnealState& st, Rng& rng, ChangeList& out) {
  const int k = static_cast<int>(st.support.size());
  if (k < 3) return false;
  int idx[3];
  idx[0] = static_cast<int>(rng.below(k));
  idx[1] = static_cast<int>(rng.below(k - 1));
  if (idx[1] >= idx[0]) ++idx[1];
  // map idx[2] into the complement of {idx[0], idx[1]}
  idx[2] = static_cast<int>(rng.below(k - 2));
  {
    const int lo = std::min(idx[0], idx[1]);
    const int hi = std::max(idx[0], idx[1]);
    if (idx[2] >= lo) ++idx[2];
    if (idx[2] >= hi) ++idx[2];
  }
  const int a = st.support[idx[0]];
  const int b = st.support[idx[1]];
  const int c = st.support[idx[2]];
  const int ia = st.mapping[b], ib = st.mapping[c], ic = st.mapping[a];
  if (ia == a || ib == b || ic == c) return false;  // would fix a point
  out.clear();
  out.push_back({a, ia});
  out.push_back({b, ib});
  out.push_back({c, ic});
  return true;
}

bool propose_move(const Graph& g, AnnealState& st, Rng& rng, ChangeList& out) {
  const int n = static_cast<int>(st.mapping.size());
  const int k = static_cast<int>(st.support.size());
  const bool can_swap_support = k < n;
  const bool can_recompose = k >= 3;
  if (!can_swap_support && !can_recompose) return false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    int kinds = (can_swap_support ? 1 : 0) + (can_recompose ? 2 : 0);
    int pick;
    if (kinds == 3) {
      pick = static_cast<int>(rng.below(3));
    } else if (can_swap_support) {
      pick = 0;
    } else {
      pick = 1 + static_cast<int>(rng.below(2));
    }
    bool ok = false;
    switch (pick) {
      case 0:
        ok = propose_support_swap(g, st, rng, out);
        break;
      case 1:
        ok = propose_image_swap(st, rng, out);
        break;
      default:
        ok = propose_rotation(st, rng, out);
        break;
    }
    if (ok) return true;
  }
  return false;
}

struct RestartResult {
  long long cost = std::numeric_limits<long long>::max();
  std::vector<int> mapping;
};

RestartResult run_restart(const Graph& g, int k, const SearchParams& params,
                          int restart_index) {
  Rng rng = Rng::stream(params.seed, "anneal-restart",
                        static_cast<std::uint64_t>(restart_index));
  AnnealState st;
  st.init(sample_k_perm(g.n(), k, rng));
  st.cost = full_cost(g, st);

  RestartResult best;
  best.cost = st.cost;
  best.mapping = st.mapping;

  ChangeList changes;
  changes.reserve(3);

  // probe for an initial temperature where the median uphill move accepts
  // with probability about 1/2
  std::vector<long long> uphill;
  for (int probe = 0; probe < 100; ++probe) {
    if (!propose_move(g, st, rng, changes)) break;
    const long long delta = cost_delta(g, st, changes);
    if (delta > 0) uphill.push_back(delta);
  }
  double temperature = 1.0;
  if (!uphill.empty()) {
    std::nth_element(uphill.begin(), uphill.begin() + uphill.size() / 2,
                     uphill.end());
    temperature = static_cast<double>(uphill[uphill.size() / 2]) / std::log(2.0);
  }

  for (int step = 0; step < params.steps && best.cost > 0; ++step) {
    if (!propose_move(g, st, rng, changes)) break;
    const long long delta = cost_delta(g, st, changes);
    if (delta <= 0 ||
        std::exp(-static_cast<double>(delta) / temperature) > rng.next_double()) {
      // support membership changes only under a support swap, which is
      // encoded as (a->t, t->b, s->s) with s leaving and t entering
      for (const ImageChange& c : changes) {
        if (c.vertex == c.new_image) {
          for (const ImageChange& d : changes) {
            if (d.vertex != d.new_image && !st.in_support(d.vertex)) {
              st.swap_membership(c.vertex, d.vertex);
              break;
            }
          }
        }
      }
      apply_changes(st, changes);
      st.cost += delta;
      if (st.cost < best.cost) {
        best.cost = st.cost;
        best.mapping = st.mapping;
      }
    }
    temperature *= params.cooling;
  }
  return best;
}

}  // namespace

DeltaEntry heuristic_delta_k(const Graph& g, int k, const SearchParams& params) {
  require_normalizable(g);
  if (k < 2 || k > g.n()) throw DomainError("heuristic_delta_k: need 2 <= k <= n");
  if (params.restarts < 1 || params.steps < 0) {
    throw DomainError("heuristic_delta_k: need restarts >= 1 and steps >= 0");
  }

  std::vector<RestartResult> results(params.restarts);
  const int jobs = std::max(1, params.jobs);
  if (jobs == 1) {
    for (int r = 0; r < params.restarts; ++r) results[r] = run_restart(g, k, params, r);
  } else {
    std::vector<std::future<void>> tasks;
    std::atomic<int> next{0};
    for (int j = 0; j < jobs; ++j) {
      tasks.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const int r = next.fetch_add(1);
          if (r >= params.restarts) return;
          results[r] = run_restart(g, k, params, r);
        }
      }));
    }
    for (auto& t : tasks) t.get();
  }

  // merge by cost, ties to the lowest restart index: schedule-independent
  int best_index = 0;
  for (int r = 1; r < params.restarts; ++r) {
    if (results[r].cost < results[best_index].cost) best_index = r;
  }

  DeltaEntry entry;
  entry.k = k;
  entry.dist = results[best_index].cost;
  entry.delta = make_delta(entry.dist, k, g);
  entry.witness = Permutation::from_mapping(results[best_index].mapping);
  entry.exact = false;
  return entry;
}

AsymmetryProfile exact_profile(const Graph& g, unsigned long long budget,
                               const SearchParams& params) {
  require_normalizable(g);
  AsymmetryProfile profile;
  profile.n = g.n();
  profile.m = g.m();
  profile.graph_hash = g.content_hash();
  for (int k = 2; k <= g.n(); ++k) {
    if (count_k_perms(g.n(), k) <= BigInt(budget)) {
      profile.entries.push_back(exact_delta_k(g, k, budget));
    } else {
      SearchParams per_k = params;
      per_k.seed = Rng::derive(params.seed, "profile-heuristic", static_cast<std::uint64_t>(k));
      profile.entries.push_back(heuristic_delta_k(g, k, per_k));
    }
  }
  return profile;
}

std::string to_string(AsymmetryVerdict v) {
  switch (v) {
    case AsymmetryVerdict::certified:
      return "certified";
    case AsymmetryVerdict::not_refuted:
      return "not-refuted";
    case AsymmetryVerdict::refuted:
      return "refuted";
  }
  return "unknown";
}

AsymmetryVerdict is_delta_asymmetric(const Graph& g, const Rational& delta,
                                     const AsymmetryProfile& profile) {
  if (profile.n != g.n() || profile.m != g.m() ||
      profile.graph_hash != g.content_hash()) {
    throw DomainError("is_delta_asymmetric: profile does not match this graph");
  }
  for (const DeltaEntry& e : profile.entries) {
    if (e.delta < delta) return AsymmetryVerdict::refuted;
  }
  return profile.all_exact() ? AsymmetryVerdict::certified
                             : AsymmetryVerdict::not_refuted;
}

std::optional<Permutation> has_nontrivial_automorphism(const Graph& g,
                                                       unsigned long long budget) {
  BigInt total = 0;
  for (int k = 2; k <= g.n(); ++k) total += count_k_perms(g.n(), k);
  if (total > BigInt(budget)) {
    throw BudgetError("has_nontrivial_automorphism: scanning " + total.str() +
                          " permutations exceeds the budget of " +
                          std::to_string(budget),
                      total);
  }

  SubsetEvaluator evaluator(g);
  std::optional<Permutation> found;
  for (int k = 2; k <= g.n() && !found; ++k) {
    for_each_k_perm(g.n(), k, [&](std::span<const int> support,
                                  std::span<const int> images) {
      if (!evaluator.same_support(support)) evaluator.load(support);
      if (evaluator.eval(images, std::numeric_limits<long long>::max()) == 0) {
        found = materialize(g.n(), support, images);
        return false;
      }
      return true;
    });
  }
  return found;
}

}  // namespace rasym
