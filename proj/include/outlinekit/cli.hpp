#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "outlinekit/config.hpp"

namespace outlinekit::cli {

using std::filesystem::path;

struct CurateArgs {
  std::vector<path> snapshots;  // lines with "outline" are survey documents, the rest feed the corpus
  std::vector<path> corpus;     // extra metadata-only snapshots
  path out;
  std::optional<path> rejections;  // defaults to <out>.rejections.jsonl
};

struct CompleteArgs {
  path records;
  std::vector<path> corpus;
  path out;
};

struct SplitArgs {
  path records;
  path out_dir;
  double rl_fraction = 0.5;
  std::uint64_t seed = 0;
  std::optional<std::string> cutoff;
};

struct PairArgs {
  path gen;
  path ref;
  std::optional<path> pool;  // one paper id per line
  std::optional<double> lambda;
};

struct JudgeArgs {
  path pairs;  // JSONL of {"id", "topic", "generated", "reference"}
  path out_dir;
  bool mock = false;
  double mock_score = 8.0;
  std::string label = "Mean";
};

struct DistillArgs {
  path records;
  path out;
};

struct ValidateCotArgs {
  path records;
  path responses;  // JSONL of {"id", "response"}
  path out;        // accepted records with the reasoning attached
  std::optional<path> verdicts;
};

struct GrpoArgs {
  path rollouts;  // JSONL, one group per line
};

int cmd_curate(const CurateArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_complete(const CompleteArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_split(const SplitArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reward(const PairArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_distance(const PairArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_judge(const JudgeArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_distill_prompts(const DistillArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate_cot(const ValidateCotArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_grpo(const GrpoArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace outlinekit::cli
