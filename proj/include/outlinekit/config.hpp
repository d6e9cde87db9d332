#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "outlinekit/curation.hpp"
#include "outlinekit/grpo.hpp"
#include "outlinekit/http_judge.hpp"
#include "outlinekit/reward.hpp"

namespace outlinekit {

struct JudgeSettings {
  JudgeEndpoint endpoint;
  std::string api_key_env = "OUTLINEKIT_JUDGE_API_KEY";
  int samples_per_criterion = 1;
  std::size_t concurrency = 4;
};

/// Everything the command-line tool can be configured with. The reward
/// schema doubles as the format schema for CoT validation.
struct CliConfig {
  RewardConfig reward;
  GrpoConfig grpo;
  CurationConfig curation;
  JudgeSettings judge;
  std::string embedder = "hashing";  // "hashing" or "none"
  std::size_t embedding_dim = 512;
  std::size_t workers = 1;

  void validate() const;
};

/// Sections: "schema", "reward", "grpo", "curation", "judge", "runtime".
/// Missing keys keep their defaults; unknown keys and wrong types throw
/// Error(ConfigInvalid). The result is validated.
CliConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const CliConfig& cfg);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

/// OUTLINEKIT_JUDGE_BASE_URL and OUTLINEKIT_JUDGE_MODEL replace the endpoint
/// fields; the API key is read from the variable named by judge.api_key_env.
void apply_env_overrides(CliConfig& cfg, const EnvLookup& env = process_env);

/// Defaults when `path` is empty, then environment overrides.
/// Throws Error(Io) or Error(ConfigInvalid).
CliConfig load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env = process_env);

}  // namespace outlinekit
