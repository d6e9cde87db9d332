#include "outlinekit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <type_traits>

#include "outlinekit/error.hpp"

namespace outlinekit {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    auto it = root.find(name_);
    if (it == root.end()) return;
    if (!it->is_object()) fail("section must be an object");
    node_ = &*it;
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (node_ == nullptr) return;
    auto it = node_->find(key);
    if (it == node_->end()) return;
    const json& v = *it;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(key + " must be a boolean");
      out = v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(key + " must be a string");
      out = v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      if (!v.is_array()) fail(key + " must be a list of strings");
      out.clear();
      for (const auto& s : v) {
        if (!s.is_string()) fail(key + " must be a list of strings");
        out.push_back(s.get<std::string>());
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(key + " must be an integer");
      if (std::is_unsigned_v<T> && v.get<long long>() < 0) fail(key + " must be non-negative");
      out = v.get<T>();
    } else {
      if (!v.is_number()) fail(key + " must be a number");
      out = v.get<double>();
    }
  }

  void read_date(const std::string& key, Date& out) {
    std::string s;
    read(key, s);
    if (s.empty()) return;
    try {
      out = parse_date(s);
    } catch (const Error&) {
      fail(key + " must be a YYYY-MM-DD date");
    }
  }

  void read_relabel(const std::string& key, RelabelMode& out) {
    std::string s;
    read(key, s);
    if (!s.empty()) out = parse_relabel_mode(s);
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& [k, v] : node_->items()) {
      if (!seen_.contains(k)) fail("unknown key '" + k + "'");
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ConfigInvalid, name_ + ": " + msg);
  }

  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

const std::set<std::string> kSections{"schema", "reward", "grpo", "curation", "judge", "runtime"};

}  // namespace

void CliConfig::validate() const {
  reward.validate();
  grpo.validate();
  curation.validate();
  if (embedder != "hashing" && embedder != "none") {
    throw Error(ErrorCode::ConfigInvalid, "embedder must be 'hashing' or 'none'");
  }
  if (embedding_dim == 0) throw Error(ErrorCode::ConfigInvalid, "embedding_dim must be > 0");
  if (workers == 0) throw Error(ErrorCode::ConfigInvalid, "workers must be > 0");
  if (judge.samples_per_criterion < 1) throw Error(ErrorCode::ConfigInvalid, "samples_per_criterion must be >= 1");
  if (judge.concurrency == 0) throw Error(ErrorCode::ConfigInvalid, "judge concurrency must be > 0");
  if (judge.endpoint.max_retries < 0) throw Error(ErrorCode::ConfigInvalid, "max_retries must be >= 0");
  if (!(judge.endpoint.timeout_seconds > 0.0)) throw Error(ErrorCode::ConfigInvalid, "timeout_seconds must be > 0");
}

CliConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kSections.contains(k)) throw Error(ErrorCode::ConfigInvalid, "unknown section '" + k + "'");
  }

  CliConfig cfg;

  Section schema(j, "schema");
  auto& s = cfg.reward.schema;
  schema.read("max_depth", s.max_depth);
  schema.read("min_top_sections", s.min_top_sections);
  schema.read("max_top_sections", s.max_top_sections);
  schema.read("max_heading_chars", s.max_heading_chars);
  schema.read("require_citations_subset", s.require_citations_subset);
  schema.finish();

  Section reward(j, "reward");
  reward.read("lambda", cfg.reward.lambda);
  reward.read("insert_cost", cfg.reward.costs.insert_cost);
  reward.read("delete_cost", cfg.reward.costs.delete_cost);
  reward.read_relabel("relabel_mode", cfg.reward.costs.relabel_mode);
  reward.finish();

  Section grpo(j, "grpo");
  grpo.read("epsilon", cfg.grpo.epsilon);
  grpo.read("beta", cfg.grpo.beta);
  grpo.read("std_floor", cfg.grpo.std_floor);
  grpo.finish();

  Section curation(j, "curation");
  auto& c = cfg.curation;
  curation.read("survey_keywords", c.survey_keywords);
  curation.read("min_top_sections", c.min_top_sections);
  curation.read("max_top_sections", c.max_top_sections);
  curation.read("max_depth", c.max_depth);
  curation.read("min_references", c.min_references);
  curation.read("strip_sections", c.strip_sections);
  curation.read("similarity_threshold", c.similarity_threshold);
  curation.read_date("test_cutoff_date", c.test_cutoff_date);
  curation.read("embedder", cfg.embedder);
  curation.read("embedding_dim", cfg.embedding_dim);
  curation.finish();

  Section judge(j, "judge");
  auto& e = cfg.judge.endpoint;
  judge.read("base_url", e.base_url);
  judge.read("model", e.model);
  judge.read("api_key_env", cfg.judge.api_key_env);
  judge.read("timeout_seconds", e.timeout_seconds);
  judge.read("max_retries", e.max_retries);
  judge.read("requests_per_second", e.requests_per_second);
  judge.read("temperature", e.temperature);
  judge.read("retry_backoff_ms", e.retry_backoff_ms);
  judge.read("samples_per_criterion", cfg.judge.samples_per_criterion);
  judge.read("concurrency", cfg.judge.concurrency);
  judge.finish();

  Section runtime(j, "runtime");
  runtime.read("workers", cfg.workers);
  runtime.finish();

  cfg.validate();
  return cfg;
}

json config_to_json(const CliConfig& cfg) {
  const auto& s = cfg.reward.schema;
  const auto& c = cfg.curation;
  const auto& e = cfg.judge.endpoint;
  return {
      {"schema",
       {{"max_depth", s.max_depth},
        {"min_top_sections", s.min_top_sections},
        {"max_top_sections", s.max_top_sections},
        {"max_heading_chars", s.max_heading_chars},
        {"require_citations_subset", s.require_citations_subset}}},
      {"reward",
       {{"lambda", cfg.reward.lambda},
        {"insert_cost", cfg.reward.costs.insert_cost},
        {"delete_cost", cfg.reward.costs.delete_cost},
        {"relabel_mode", std::string(to_string(cfg.reward.costs.relabel_mode))}}},
      {"grpo", {{"epsilon", cfg.grpo.epsilon}, {"beta", cfg.grpo.beta}, {"std_floor", cfg.grpo.std_floor}}},
      {"curation",
       {{"survey_keywords", c.survey_keywords},
        {"min_top_sections", c.min_top_sections},
        {"max_top_sections", c.max_top_sections},
        {"max_depth", c.max_depth},
        {"min_references", c.min_references},
        {"strip_sections", c.strip_sections},
        {"similarity_threshold", c.similarity_threshold},
        {"test_cutoff_date", format_date(c.test_cutoff_date)},
        {"embedder", cfg.embedder},
        {"embedding_dim", cfg.embedding_dim}}},
      {"judge",
       {{"base_url", e.base_url},
        {"model", e.model},
        {"api_key_env", cfg.judge.api_key_env},
        {"timeout_seconds", e.timeout_seconds},
        {"max_retries", e.max_retries},
        {"requests_per_second", e.requests_per_second},
        {"temperature", e.temperature},
        {"retry_backoff_ms", e.retry_backoff_ms},
        {"samples_per_criterion", cfg.judge.samples_per_criterion},
        {"concurrency", cfg.judge.concurrency}}},
      {"runtime", {{"workers", cfg.workers}}},
  };
}

std::optional<std::string> process_env(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

void apply_env_overrides(CliConfig& cfg, const EnvLookup& env) {
  if (auto url = env("OUTLINEKIT_JUDGE_BASE_URL"); url && !url->empty()) cfg.judge.endpoint.base_url = *url;
  if (auto model = env("OUTLINEKIT_JUDGE_MODEL"); model && !model->empty()) cfg.judge.endpoint.model = *model;
  if (!cfg.judge.api_key_env.empty()) {
    if (auto key = env(cfg.judge.api_key_env)) cfg.judge.endpoint.api_key = *key;
  }
}

CliConfig load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env) {
  CliConfig cfg;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path->string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ConfigInvalid, path->string() + ": " + e.what());
    }
    cfg = config_from_json(j);
  }
  apply_env_overrides(cfg, env);
  return cfg;
}

}  // namespace outlinekit
