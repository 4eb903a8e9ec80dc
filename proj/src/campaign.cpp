#include "rasym/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "rasym/errors.hpp"
#include "rasym/rng.hpp"

namespace rasym {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

std::uint64_t fnv_absorb_string(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string to_string(Model m) { return m == Model::gnp ? "gnp" : "gnpd"; }

std::string to_string(Task t) {
  switch (t) {
    case Task::profile:
      return "profile";
    case Task::delta2:
      return "delta2";
    case Task::verify:
      return "verify";
    case Task::small_k_bound:
      return "small-k-bound";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  if (name == "gnp") return Model::gnp;
  if (name == "gnpd") return Model::gnpd;
  throw DomainError("unknown model '" + name + "' (expected gnp or gnpd)");
}

Task parse_task(const std::string& name) {
  if (name == "profile") return Task::profile;
  if (name == "delta2") return Task::delta2;
  if (name == "verify") return Task::verify;
  if (name == "small-k-bound" || name == "small_k_bound") return Task::small_k_bound;
  throw DomainError("unknown task '" + name + "'");
}

int CampaignConfig::effective_d() const {
  return d >= 0 ? d : default_degree_floor(n, p);
}

std::uint64_t CampaignConfig::digest() const {
  std::ostringstream canon;
  canon << "model=" << to_string(model) << ";n=" << n << ";p=" << p
        << ";d=" << effective_d() << ";budget=" << exact_budget
        << ";restarts=" << search.restarts << ";steps=" << search.steps
        << ";cooling=" << search.cooling << ";search_seed=" << search.seed
        << ";small_k=" << small_k << ";small_k_samples=" << small_k_samples
        << ";avg_slack=" << avg_slack << ";density_budget=" << density_budget
        << ";seeds=";
  for (std::uint64_t s : seeds) canon << s << ',';
  canon << ";tasks=";
  for (Task t : tasks) canon << to_string(t) << ',';
  return fnv_absorb_string(0xcbf29ce484222325ULL, canon.str());
}

std::vector<std::uint64_t> expand_seeds(std::uint64_t master_seed, int count) {
  if (count < 1) throw DomainError("expand_seeds: need count >= 1");
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) {
    seeds[i] = Rng::derive(master_seed, "campaign-seed", static_cast<std::uint64_t>(i));
  }
  return seeds;
}

const char* const kCampaignCsvHeader =
    "seed,n,m,delta2_num,delta2_den,overall_delta_num,overall_delta_den,"
    "certified,avg_degree,common_neighbors,density,small_k_bound,"
    "profile_path,error,gen_ms,delta2_ms,profile_ms,verify_ms,small_k_ms";

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string campaign_csv_row(const ResultRecord& r) {
  std::ostringstream row;
  row << r.seed << ',' << r.n << ',';
  if (r.m >= 0) row << r.m;
  row << ',';
  if (r.delta2) row << r.delta2->delta.numerator();
  row << ',';
  if (r.delta2) row << r.delta2->delta.denominator();
  row << ',';
  if (r.overall_delta) row << r.overall_delta->numerator();
  row << ',';
  if (r.overall_delta) row << r.overall_delta->denominator();
  row << ',';
  if (r.certified) row << (*r.certified ? "true" : "false");
  row << ',';
  if (r.avg_degree) row << to_string(r.avg_degree->verdict);
  row << ',';
  if (r.common_neighbors) row << to_string(r.common_neighbors->verdict);
  row << ',';
  if (r.density) row << to_string(r.density->verdict);
  row << ',';
  if (r.small_k) row << to_string(r.small_k->verdict);
  row << ',' << csv_escape(r.profile_path) << ',' << csv_escape(r.error) << ','
      << r.gen_ms << ',' << r.delta2_ms << ',' << r.profile_ms << ','
      << r.verify_ms << ',' << r.small_k_ms;
  return row.str();
}

namespace {

bool has_task(const CampaignConfig& config, Task task) {
  return std::find(config.tasks.begin(), config.tasks.end(), task) !=
         config.tasks.end();
}

ResultRecord run_seed(const CampaignConfig& config, std::uint64_t seed) {
  ResultRecord record;
  record.seed = seed;
  record.n = config.n;
  try {
    const auto gen_start = Clock::now();
    Graph g = config.model == Model::gnp
                  ? gen_gnp({config.n, config.p, seed})
                  : gen_gnpd({config.n, config.p, config.effective_d(), seed});
    record.gen_ms = ms_since(gen_start);
    record.m = g.m();

    if (has_task(config, Task::delta2)) {
      const auto start = Clock::now();
      record.delta2 = exact_delta_2(g);
      record.delta2_ms = ms_since(start);
    }
    if (has_task(config, Task::profile)) {
      const auto start = Clock::now();
      SearchParams search = config.search;
      search.seed = Rng::derive(config.search.seed, "campaign-search", seed);
      const AsymmetryProfile profile = exact_profile(g, config.exact_budget, search);
      record.overall_delta = profile.overall_delta();
      record.certified = profile.all_exact();
      const fs::path path = fs::path(config.out_dir) /
                            ("profile_" + std::to_string(seed) + ".json");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw IoError("cannot write " + path.string());
      out << profile.to_json().dump(2) << '\n';
      record.profile_path = path.filename().string();
      record.profile_ms = ms_since(start);
    }
    if (has_task(config, Task::verify)) {
      const auto start = Clock::now();
      const int d = config.effective_d();
      record.avg_degree = check_avg_degree(g, config.p, d, config.avg_slack);
      record.common_neighbors = check_common_neighbors(g);
      const int limit = static_cast<int>(
          std::min<long long>(g.n(), g.n() / (static_cast<long long>(d) * d)));
      record.density = check_small_set_density(g, limit, config.density_budget);
      record.verify_ms = ms_since(start);
    }
    if (has_task(config, Task::small_k_bound)) {
      const auto start = Clock::now();
      SearchParams search = config.search;
      record.small_k = check_small_k_bound(
          g, config.p, config.effective_d(), config.small_k,
          config.small_k_samples, Rng::derive(seed, "campaign-small-k"), search);
      record.small_k_ms = ms_since(start);
    }
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  return record;
}

Rational median_rational(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

nlohmann::ordered_json rational_json(const Rational& r) {
  return nlohmann::ordered_json::array({r.numerator(), r.denominator()});
}

nlohmann::ordered_json delta_summary(const std::vector<Rational>& values) {
  nlohmann::ordered_json doc;
  if (values.empty()) return doc;
  doc["min"] = rational_json(*std::min_element(values.begin(), values.end()));
  doc["median"] = rational_json(median_rational(values));
  return doc;
}

void add_pass_rate(nlohmann::ordered_json& rates, const char* key,
                   const std::vector<ResultRecord>& records,
                   std::optional<CheckReport> ResultRecord::* member) {
  long long pass = 0;
  long long total = 0;
  for (const ResultRecord& r : records) {
    const auto& report = r.*member;
    if (!report) continue;
    ++total;
    if (report->verdict == Verdict::pass ||
        report->verdict == Verdict::statistical_pass) {
      ++pass;
    }
  }
  if (total > 0) rates[key] = {{"pass", pass}, {"total", total}};
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
  if (config.seeds.empty()) throw DomainError("campaign: need at least one seed");
  if (config.tasks.empty()) throw DomainError("campaign: need at least one task");
  if (config.out_dir.empty()) throw DomainError("campaign: need an output directory");
  fs::create_directories(config.out_dir);

  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  if (std::adjacent_find(seeds.begin(), seeds.end()) != seeds.end()) {
    throw DomainError("campaign: duplicate seeds");
  }

  std::vector<ResultRecord> records(seeds.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      records[i] = run_seed(config, seeds[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> tasks;
    for (int j = 0; j < jobs; ++j) {
      tasks.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= seeds.size()) return;
          records[i] = run_seed(config, seeds[i]);
        }
      }));
    }
    for (auto& t : tasks) t.get();
  }

  CampaignResult result;
  result.records = std::move(records);

  const fs::path csv_path = fs::path(config.out_dir) / "campaign.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  csv << kCampaignCsvHeader << '\n';
  for (const ResultRecord& r : result.records) csv << campaign_csv_row(r) << '\n';
  csv.flush();
  if (!csv) throw IoError("write to " + csv_path.string() + " failed");
  result.csv_path = csv_path.string();

  char digest_hex[17];
  std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                static_cast<unsigned long long>(config.digest()));

  nlohmann::ordered_json summary;
  summary["config"] = {{"model", to_string(config.model)},
                       {"n", config.n},
                       {"p", config.p},
                       {"d", config.effective_d()},
                       {"seeds", seeds.size()},
                       {"exact_budget", config.exact_budget},
                       {"search",
                        {{"restarts", config.search.restarts},
                         {"steps", config.search.steps},
                         {"cooling", config.search.cooling},
                         {"seed", config.search.seed}}}};
  summary["config"]["tasks"] = nlohmann::ordered_json::array();
  for (Task t : config.tasks) summary["config"]["tasks"].push_back(to_string(t));
  summary["config_digest"] = digest_hex;
  summary["records"] = result.records.size();
  long long errors = 0;
  long long certified = 0;
  std::vector<Rational> delta2_values;
  std::vector<Rational> overall_values;
  for (const ResultRecord& r : result.records) {
    if (!r.error.empty()) ++errors;
    if (r.certified && *r.certified) ++certified;
    if (r.delta2) delta2_values.push_back(r.delta2->delta);
    if (r.overall_delta) overall_values.push_back(*r.overall_delta);
  }
  summary["errors"] = errors;
  if (has_task(config, Task::profile)) summary["certified"] = certified;
  if (!delta2_values.empty()) summary["delta2"] = delta_summary(delta2_values);
  if (!overall_values.empty()) {
    summary["overall_delta"] = delta_summary(overall_values);
  }
  nlohmann::ordered_json rates = nlohmann::ordered_json::object();
  add_pass_rate(rates, "avg_degree", result.records, &ResultRecord::avg_degree);
  add_pass_rate(rates, "common_neighbors", result.records,
                &ResultRecord::common_neighbors);
  add_pass_rate(rates, "density", result.records, &ResultRecord::density);
  add_pass_rate(rates, "small_k_bound", result.records, &ResultRecord::small_k);
  if (!rates.empty()) summary["check_pass_rates"] = rates;

  const fs::path summary_path = fs::path(config.out_dir) / "summary.json";
  std::ofstream summary_out(summary_path, std::ios::binary);
  if (!summary_out) throw IoError("cannot write " + summary_path.string());
  summary_out << summary.dump(2) << '\n';
  result.summary = std::move(summary);
  result.summary_path = summary_path.string();
  return result;
}

}  // namespace rasym
