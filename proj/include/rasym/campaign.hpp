#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rasym/asymmetry.hpp"
#include "rasym/checks.hpp"
#include "rasym/generators.hpp"

namespace rasym {

enum class Model { gnp, gnpd };
enum class Task { profile, delta2, verify, small_k_bound };

std::string to_string(Model m);
std::string to_string(Task t);
Model parse_model(const std::string& name);
Task parse_task(const std::string& name);

struct CampaignConfig {
  Model model = Model::gnp;
  int n = 0;
  double p = 0.0;
  int d = -1;  // gnpd degree floor; -1 picks ceil(p*(n-1))
  std::vector<std::uint64_t> seeds;
  std::vector<Task> tasks;
  unsigned long long exact_budget = kDefaultExactBudget;
  SearchParams search;
  int small_k = 10;
  long long small_k_samples = 10'000;
  double avg_slack = 5.0;
  long long density_budget = 10'000'000;
  std::string out_dir;
  int jobs = 1;

  int effective_d() const;
  // stable digest of every determinism-relevant field
  std::uint64_t digest() const;
};

// Seeds expanded from a master seed: seed_i = derive(master, index).
std::vector<std::uint64_t> expand_seeds(std::uint64_t master_seed, int count);

struct ResultRecord {
  std::uint64_t seed = 0;
  int n = 0;
  long long m = -1;
  std::optional<DeltaEntry> delta2;
  std::optional<Rational> overall_delta;
  std::optional<bool> certified;
  std::optional<CheckReport> avg_degree;
  std::optional<CheckReport> common_neighbors;
  std::optional<CheckReport> density;
  std::optional<CheckReport> small_k;
  std::string profile_path;
  std::string error;
  // wall-clock per task, outside the determinism contract
  long long gen_ms = 0;
  long long delta2_ms = 0;
  long long profile_ms = 0;
  long long verify_ms = 0;
  long long small_k_ms = 0;
};

struct CampaignResult {
  std::vector<ResultRecord> records;  // sorted by seed
  nlohmann::ordered_json summary;
  std::string csv_path;
  std::string summary_path;
};

// Fixed CSV header, one row per seed sorted by seed, runtime columns last.
extern const char* const kCampaignCsvHeader;

std::string campaign_csv_row(const ResultRecord& r);

// Generates one graph per seed, runs the selected tasks (seeds run as
// independent jobs), and persists campaign.csv, summary.json and per-seed
// profile JSON files under out_dir. Per-seed failures land in the row's
// error column; only orchestration failures throw.
CampaignResult run_campaign(const CampaignConfig& config);

}  // namespace rasym
