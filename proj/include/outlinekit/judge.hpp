#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outlinekit/outline.hpp"
#include "outlinekit/tree_metrics.hpp"

namespace outlinekit {

enum class Criterion {
  StructureLocate,
  StructureDetail,
  ContentExclusion,
  ContentDepth,
  PragmaticsConcise,
};

inline constexpr std::array<Criterion, 5> kCriteria{
    Criterion::StructureLocate, Criterion::StructureDetail, Criterion::ContentExclusion,
    Criterion::ContentDepth, Criterion::PragmaticsConcise};

/// Column title, e.g. "Structure Locate".
std::string_view display_name(Criterion c);
/// JSON key, e.g. "structure_locate".
std::string_view key(Criterion c);
std::string_view rubric_text(Criterion c);

inline constexpr std::string_view kAnswerMarker = "ANSWER:";

/// Anything that can answer a prompt. Implementations must tolerate
/// concurrent calls.
class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  /// Throws Error(JudgeUnavailable) once its own retries are exhausted.
  virtual std::string complete(const std::string& prompt) const = 0;
  virtual std::string model_id() const = 0;
};

/// Answers every prompt with the same score.
class ConstantJudge final : public JudgeClient {
 public:
  explicit ConstantJudge(double score) : score_(score) {}
  std::string complete(const std::string& prompt) const override;
  std::string model_id() const override;

 private:
  double score_;
};

/// Answers through a caller-supplied function; used for scripted tests.
class ScriptedJudge final : public JudgeClient {
 public:
  using Script = std::function<std::string(const std::string&)>;
  ScriptedJudge(Script script, std::string id) : script_(std::move(script)), id_(std::move(id)) {}
  std::string complete(const std::string& prompt) const override { return script_(prompt); }
  std::string model_id() const override { return id_; }

 private:
  Script script_;
  std::string id_;
};

struct JudgeReport {
  std::array<double, 5> scores{};  // indexed like kCriteria
  double total = 0.0;
  std::optional<double> structural_distance;
  std::string judge_model_id;
  std::vector<std::string> raw_responses;

  double score(Criterion c) const { return scores[static_cast<std::size_t>(c)]; }
};

/// Sum of the five criterion scores, the "Total" column.
double aggregate_total(std::span<const double> scores);

/// Throws Error(InvalidInput) for an empty outline.
std::string build_judge_prompt(Criterion criterion, std::string_view topic, const OutlineTree& outline);

/// First number after the answer marker, clamped to [0, 10].
/// Throws Error(NoScoreFound).
double parse_judge_score(std::string_view response);

/// Scores each criterion `samples_per_criterion` times and averages. Any
/// client or parse failure propagates; no partial report is produced.
JudgeReport judge_outline(std::string_view topic, const OutlineTree& outline, const OutlineTree* reference,
                          const JudgeClient& client, int samples_per_criterion = 1,
                          const EditCostModel& costs = {});

struct CorpusItem {
  std::string id;
  std::string topic;
  OutlineTree generated;
  OutlineTree reference;
};

struct ItemResult {
  std::string id;
  std::optional<JudgeReport> report;
  std::string error;  // set when report is empty
};

struct CorpusReport {
  std::vector<ItemResult> items;  // input order
  std::array<double, 5> mean_scores{};
  double mean_total = 0.0;
  double mean_distance = 0.0;
  std::size_t succeeded = 0;
  std::size_t excluded = 0;
  std::string judge_model_id;
};

/// Judges every item with at most `concurrency_limit` calls in flight. Failed
/// items are kept with their error and excluded from the means. Column means
/// are summed in sorted order so they do not depend on item order.
/// Throws Error(NoSuccessfulItems) if nothing succeeds.
CorpusReport evaluate_corpus(std::span<const CorpusItem> items, const JudgeClient& client,
                             std::size_t concurrency_limit = 4, int samples_per_criterion = 1,
                             const EditCostModel& costs = {});

/// Aligned plain-text table: one row per successful item plus a mean row.
std::string format_table(const CorpusReport& report, std::string_view label = "Mean");

}  // namespace outlinekit
