#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rasym/asymmetry.hpp"
#include "rasym/campaign.hpp"
#include "rasym/checks.hpp"
#include "rasym/errors.hpp"
#include "rasym/generators.hpp"
#include "rasym/graph.hpp"
#include "rasym/permutation.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rasym;

// exit codes: 0 ok, 1 check failure, 2 usage, 3 I/O, 4 domain
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDomain = 4;

ordered_json rational_json(const Rational& r) {
  return ordered_json::array({r.numerator(), r.denominator()});
}

Edge parse_edge(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw DomainError("edge '" + text + "': expected 'u,v'");
  }
  try {
    const int u = std::stoi(text.substr(0, comma));
    const int v = std::stoi(text.substr(comma + 1));
    if (u == v) throw DomainError("edge '" + text + "': endpoints must differ");
    return Edge(u, v);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("edge '" + text + "': expected 'u,v'");
  }
}

struct GenOptions {
  std::string model = "gnp";
  int n = 0;
  double p = 0.0;
  int d = -1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenOptions& opt) {
  const Model model = parse_model(opt.model);
  Graph g = model == Model::gnp
                ? gen_gnp({opt.n, opt.p, opt.seed})
                : gen_gnpd({opt.n, opt.p,
                            opt.d >= 0 ? opt.d : default_degree_floor(opt.n, opt.p),
                            opt.seed});
  save_edge_list(g, opt.out);
  const DegreeStats stats = degree_stats(g);
  ordered_json doc;
  doc["n"] = g.n();
  doc["m"] = g.m();
  doc["degree_min"] = stats.min;
  doc["degree_avg"] = rational_json(stats.average);
  doc["degree_max"] = stats.max;
  doc["aux_edges"] = g.aux_edges().size();
  doc["out"] = opt.out;
  std::cout << doc.dump() << '\n';
  return kExitOk;
}

struct SearchOptions {
  int restarts = SearchParams{}.restarts;
  int steps = SearchParams{}.steps;
  double cooling = SearchParams{}.cooling;
  std::uint64_t seed = 0;
  int jobs = 1;

  SearchParams params() const {
    return SearchParams{restarts, steps, cooling, seed, jobs};
  }

  void add_flags(CLI::App* cmd, bool with_jobs = true) {
    cmd->add_option("--restarts", restarts, "annealing restarts");
    cmd->add_option("--steps", steps, "annealing steps per restart");
    cmd->add_option("--cooling", cooling, "geometric cooling factor");
    cmd->add_option("--search-seed", seed, "seed for the annealing search");
    if (with_jobs) cmd->add_option("--jobs", jobs, "parallel restart workers");
  }
};

int run_profile(const std::string& input, unsigned long long budget,
                const SearchOptions& search, const std::string& out) {
  const Graph g = load_edge_list(input);
  const AsymmetryProfile profile = exact_profile(g, budget, search.params());
  const ordered_json doc = profile.to_json();
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw IoError("cannot write '" + out + "'");
    file << doc.dump(2) << '\n';
    ordered_json summary;
    summary["overall"] = rational_json(profile.overall_delta());
    summary["certified"] = profile.all_exact();
    summary["out"] = out;
    std::cout << summary.dump() << '\n';
  } else {
    ordered_json full = doc;
    full["certified"] = profile.all_exact();
    std::cout << full.dump(2) << '\n';
  }
  return kExitOk;
}

int run_delta2(const std::string& input) {
  const Graph g = load_edge_list(input);
  const DeltaEntry entry = exact_delta_2(g);
  ordered_json doc;
  doc["k"] = 2;
  doc["delta"] = rational_json(entry.delta);
  doc["dist"] = entry.dist;
  doc["witness"] = entry.witness.cycle_notation();
  std::cout << doc.dump() << '\n';
  return kExitOk;
}

int run_dist(const std::string& a, const std::string& b) {
  const Graph g = load_edge_list(a);
  const Graph h = load_edge_list(b);
  const Rational d = dist(g, h);
  ordered_json doc;
  doc["dist"] = rational_json(d);
  std::cout << doc.dump() << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::vector<std::string> checks;
  std::string input;
  int n = 0;
  double p = 0.0;
  int d = -1;
  int k = 2;
  int m_s = -1;
  int limit = -1;
  double slack = 5.0;
  long long trials = 10'000;
  long long target_conditional = 1'000;
  long long trial_cap = 1'000'000;
  long long node_budget = 10'000'000;
  long long samples = 10'000;
  int max_pairs = 12;
  std::uint64_t seed = 0;
  std::vector<std::string> forced;
  std::string edge;
  std::string out;
  SearchOptions search;
};

Graph require_input(const VerifyOptions& opt, const std::string& check) {
  if (opt.input.empty()) {
    throw DomainError("check '" + check + "' needs --input");
  }
  return load_edge_list(opt.input);
}

CheckReport dispatch_check(const std::string& name, const VerifyOptions& opt) {
  if (name == "avg-degree") {
    const Graph g = require_input(opt, name);
    const int d = opt.d >= 0 ? opt.d : default_degree_floor(g.n(), opt.p);
    return check_avg_degree(g, opt.p, d, opt.slack);
  }
  if (name == "common-neighbors") {
    return check_common_neighbors(require_input(opt, name));
  }
  if (name == "density") {
    const Graph g = require_input(opt, name);
    int limit = opt.limit;
    if (limit < 0) {
      if (opt.d < 1) throw DomainError("density: need --limit or --d");
      limit = static_cast<int>(std::min<long long>(
          g.n(), g.n() / (static_cast<long long>(opt.d) * opt.d)));
    }
    return check_small_set_density(g, limit, opt.node_budget);
  }
  if (name == "covered-mean") {
    return mc_covered_edges(opt.n, opt.p, opt.k, opt.trials, opt.seed);
  }
  if (name == "placement") {
    if (opt.n < 2 || opt.k < 2 || opt.k > opt.n) {
      throw DomainError("placement: need --n and --k with 2 <= k <= n");
    }
    if (opt.m_s < 0) throw DomainError("placement: need --m-s");
    // canonical witness: the cycle (0 1 ... k-1)
    std::vector<int> mapping(opt.n);
    for (int v = 0; v < opt.n; ++v) mapping[v] = v;
    for (int i = 0; i < opt.k; ++i) mapping[i] = (i + 1) % opt.k;
    const Permutation pi = Permutation::from_mapping(std::move(mapping));
    return mc_placement_expectation({opt.n, opt.k, opt.m_s, opt.trials}, pi, opt.seed);
  }
  if (name == "placement-sweep") {
    return placement_exact_sweep(opt.max_pairs);
  }
  if (name == "edge-prob") {
    if (opt.edge.empty()) throw DomainError("edge-prob: need --edge u,v");
    std::vector<Edge> forced;
    for (const std::string& text : opt.forced) forced.push_back(parse_edge(text));
    const int d = opt.d >= 0 ? opt.d : default_degree_floor(opt.n, opt.p);
    return mc_edge_probability({opt.n, opt.p, d, 0}, forced, parse_edge(opt.edge),
                               opt.target_conditional, opt.seed, opt.trial_cap);
  }
  if (name == "small-k") {
    const Graph g = require_input(opt, name);
    const int d = opt.d >= 0 ? opt.d : default_degree_floor(g.n(), opt.p);
    return check_small_k_bound(g, opt.p, d, opt.k, opt.samples, opt.seed,
                               opt.search.params());
  }
  throw DomainError("unknown check '" + name + "'");
}

int run_verify(const VerifyOptions& opt) {
  ordered_json reports = ordered_json::array();
  long long failed = 0;
  long long warnings = 0;
  for (const std::string& name : opt.checks) {
    const CheckReport report = dispatch_check(name, opt);
    if (report.failed()) ++failed;
    if (report.verdict == Verdict::inconclusive ||
        report.verdict == Verdict::skipped) {
      ++warnings;
      std::cerr << "warning: check '" << report.name
                << "' was " << to_string(report.verdict);
      if (!report.note.empty()) std::cerr << ": " << report.note;
      std::cerr << '\n';
    }
    reports.push_back(report.to_json());
  }
  ordered_json doc;
  doc["checks"] = reports;
  doc["summary"] = {{"total", opt.checks.size()},
                    {"failed", failed},
                    {"warnings", warnings}};
  const std::string text = doc.dump(2) + "\n";
  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw IoError("cannot write '" + opt.out + "'");
    file << text;
  }
  std::cout << text;
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

struct CampaignOptions {
  std::string config_file;
  std::string model = "gnp";
  int n = 0;
  double p = 0.0;
  int d = -1;
  std::vector<std::uint64_t> seeds;
  int seed_count = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> tasks;
  unsigned long long budget = kDefaultExactBudget;
  int small_k = 10;
  long long small_k_samples = 10'000;
  double avg_slack = 5.0;
  long long density_budget = 10'000'000;
  std::string out_dir;
  int jobs = 1;
  SearchOptions search;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// Flat key=value campaign config; '#' starts a comment. Flags given on the
// command line take precedence over file values.
void apply_config_file(CampaignOptions& opt, const CLI::App* cmd) {
  std::ifstream in(opt.config_file);
  if (!in) throw IoError("cannot open config file '" + opt.config_file + "'");
  auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto last = line.find_last_not_of(" \t\r");
    if (last == std::string::npos) continue;
    line.erase(last + 1);
    const auto first = line.find_first_not_of(" \t");
    line.erase(0, first);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "model") {
        if (!given("--model")) opt.model = value;
      } else if (key == "n") {
        if (!given("--n")) opt.n = std::stoi(value);
      } else if (key == "p") {
        if (!given("--p")) opt.p = std::stod(value);
      } else if (key == "d") {
        if (!given("--d")) opt.d = std::stoi(value);
      } else if (key == "seeds") {
        if (!given("--seeds")) {
          opt.seeds.clear();
          for (const std::string& s : split_list(value)) opt.seeds.push_back(std::stoull(s));
        }
      } else if (key == "seed-count") {
        if (!given("--seed-count")) opt.seed_count = std::stoi(value);
      } else if (key == "master-seed") {
        if (!given("--master-seed")) opt.master_seed = std::stoull(value);
      } else if (key == "tasks") {
        if (!given("--tasks")) opt.tasks = split_list(value);
      } else if (key == "budget") {
        if (!given("--budget")) opt.budget = std::stoull(value);
      } else if (key == "small-k") {
        if (!given("--small-k")) opt.small_k = std::stoi(value);
      } else if (key == "small-k-samples") {
        if (!given("--small-k-samples")) opt.small_k_samples = std::stoll(value);
      } else if (key == "avg-slack") {
        if (!given("--avg-slack")) opt.avg_slack = std::stod(value);
      } else if (key == "density-budget") {
        if (!given("--density-budget")) opt.density_budget = std::stoll(value);
      } else if (key == "out-dir") {
        if (!given("--out-dir")) opt.out_dir = value;
      } else if (key == "jobs") {
        if (!given("--jobs")) opt.jobs = std::stoi(value);
      } else if (key == "restarts") {
        if (!given("--restarts")) opt.search.restarts = std::stoi(value);
      } else if (key == "steps") {
        if (!given("--steps")) opt.search.steps = std::stoi(value);
      } else if (key == "cooling") {
        if (!given("--cooling")) opt.search.cooling = std::stod(value);
      } else if (key == "search-seed") {
        if (!given("--search-seed")) opt.search.seed = std::stoull(value);
      } else {
        throw DomainError("config line " + std::to_string(line_no) +
                          ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw DomainError("config line " + std::to_string(line_no) + ": bad value '" +
                        value + "' for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw DomainError("config line " + std::to_string(line_no) + ": bad value '" +
                        value + "' for '" + key + "'");
    }
  }
}

int run_campaign_cmd(CampaignOptions& opt, const CLI::App* cmd) {
  if (!opt.config_file.empty()) apply_config_file(opt, cmd);
  if (opt.n <= 0) throw DomainError("campaign: need --n");
  if (opt.tasks.empty()) throw DomainError("campaign: need --tasks");
  if (opt.out_dir.empty()) throw DomainError("campaign: need --out-dir");

  CampaignConfig config;
  config.model = parse_model(opt.model);
  config.n = opt.n;
  config.p = opt.p;
  config.d = opt.d;
  if (!opt.seeds.empty()) {
    config.seeds = opt.seeds;
  } else if (opt.seed_count > 0) {
    config.seeds = expand_seeds(opt.master_seed, opt.seed_count);
  } else {
    throw DomainError("campaign: need --seeds or --seed-count");
  }
  for (const std::string& t : opt.tasks) config.tasks.push_back(parse_task(t));
  config.exact_budget = opt.budget;
  config.search = opt.search.params();
  config.search.jobs = 1;  // campaign parallelism is across seeds
  config.small_k = opt.small_k;
  config.small_k_samples = opt.small_k_samples;
  config.avg_slack = opt.avg_slack;
  config.density_budget = opt.density_budget;
  config.out_dir = opt.out_dir;
  config.jobs = opt.jobs;

  const CampaignResult result = run_campaign(config);
  std::cout << result.summary.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust graph asymmetry toolkit"};
  app.require_subcommand(1);

  // gen
  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "sample a random graph to a file");
  gen->add_option("--model", gen_opt.model, "gnp or gnpd")->capture_default_str();
  gen->add_option("--n", gen_opt.n, "vertex count")->required();
  gen->add_option("--p", gen_opt.p, "edge probability")->required();
  gen->add_option("--d", gen_opt.d, "degree floor (gnpd; default ceil(p(n-1)))");
  gen->add_option("--seed", gen_opt.seed, "generator seed");
  gen->add_option("--out", gen_opt.out, "output edge-list path")->required();

  // dist
  std::string dist_a, dist_b;
  CLI::App* dist_cmd = app.add_subcommand("dist", "distance between two graphs");
  dist_cmd->add_option("--a", dist_a, "first edge-list file")->required();
  dist_cmd->add_option("--b", dist_b, "second edge-list file")->required();

  // profile
  std::string profile_input, profile_out;
  unsigned long long profile_budget = kDefaultExactBudget;
  SearchOptions profile_search;
  CLI::App* profile = app.add_subcommand("profile", "robustness profile delta(k)");
  profile->add_option("--input", profile_input, "edge-list file")->required();
  profile->add_option("--budget", profile_budget,
                      "max permutations per exact k")->capture_default_str();
  profile->add_option("--out", profile_out, "profile JSON path");
  profile_search.add_flags(profile);

  // delta2
  std::string delta2_input;
  CLI::App* delta2 = app.add_subcommand("delta2", "exact delta(2) fast path");
  delta2->add_option("--input", delta2_input, "edge-list file")->required();

  // verify
  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "structural property checks");
  verify->add_option("--check", verify_opt.checks,
                     "avg-degree, common-neighbors, density, covered-mean, "
                     "placement, placement-sweep, edge-prob, small-k")
      ->required()
      ->delimiter(',');
  verify->add_option("--input", verify_opt.input, "edge-list file");
  verify->add_option("--n", verify_opt.n, "vertex count (model checks)");
  verify->add_option("--p", verify_opt.p, "edge probability");
  verify->add_option("--d", verify_opt.d, "degree floor");
  verify->add_option("--k", verify_opt.k, "support size");
  verify->add_option("--m-s", verify_opt.m_s, "covered edge count (placement)");
  verify->add_option("--limit", verify_opt.limit, "set size limit (density)");
  verify->add_option("--slack", verify_opt.slack, "sigma slack (avg-degree)");
  verify->add_option("--trials", verify_opt.trials, "Monte Carlo trials");
  verify->add_option("--target-conditional", verify_opt.target_conditional,
                     "conditional sample target (edge-prob)");
  verify->add_option("--trial-cap", verify_opt.trial_cap, "trial cap (edge-prob)");
  verify->add_option("--node-budget", verify_opt.node_budget,
                     "enumeration node budget (density)");
  verify->add_option("--samples", verify_opt.samples, "sampled permutations (small-k)");
  verify->add_option("--max-pairs", verify_opt.max_pairs, "sweep bound (placement-sweep)");
  verify->add_option("--seed", verify_opt.seed, "check seed");
  verify->add_option("--forced", verify_opt.forced, "forced edges u,v (edge-prob)")
      ->delimiter(';');
  verify->add_option("--edge", verify_opt.edge, "probe edge u,v (edge-prob)");
  verify->add_option("--out", verify_opt.out, "report JSON path");
  verify_opt.search.add_flags(verify);

  // campaign
  CampaignOptions campaign_opt;
  CLI::App* campaign = app.add_subcommand("campaign", "multi-seed experiment runner");
  // optional flat key=value file; command-line flags take precedence
  campaign->add_option("--config", campaign_opt.config_file,
                       "flat key=value config file");
  campaign->add_option("--model", campaign_opt.model, "gnp or gnpd")
      ->capture_default_str();
  campaign->add_option("--n", campaign_opt.n, "vertex count");
  campaign->add_option("--p", campaign_opt.p, "edge probability");
  campaign->add_option("--d", campaign_opt.d, "degree floor (gnpd)");
  campaign->add_option("--seeds", campaign_opt.seeds, "explicit seed list")
      ->delimiter(',');
  campaign->add_option("--seed-count", campaign_opt.seed_count,
                       "number of derived seeds");
  campaign->add_option("--master-seed", campaign_opt.master_seed,
                       "master seed for derived seeds");
  campaign->add_option("--tasks", campaign_opt.tasks,
                       "profile, delta2, verify, small-k-bound")
      ->delimiter(',');
  campaign->add_option("--budget", campaign_opt.budget, "exact budget");
  campaign->add_option("--small-k", campaign_opt.small_k, "k for small-k-bound");
  campaign->add_option("--small-k-samples", campaign_opt.small_k_samples,
                       "sampled permutations for small-k-bound");
  campaign->add_option("--avg-slack", campaign_opt.avg_slack, "avg-degree slack");
  campaign->add_option("--density-budget", campaign_opt.density_budget,
                       "density enumeration budget");
  campaign->add_option("--out-dir", campaign_opt.out_dir, "output directory");
  campaign->add_option("--jobs", campaign_opt.jobs, "parallel seeds");
  campaign_opt.search.add_flags(campaign, /*with_jobs=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_opt);
    if (dist_cmd->parsed()) return run_dist(dist_a, dist_b);
    if (profile->parsed()) {
      return run_profile(profile_input, profile_budget, profile_search, profile_out);
    }
    if (delta2->parsed()) return run_delta2(delta2_input);
    if (verify->parsed()) return run_verify(verify_opt);
    if (campaign->parsed()) return run_campaign_cmd(campaign_opt, campaign);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
