#pragma once

// JSON wire formats. Every *_from_json throws Error(InvalidInput) with a
// readable message when a field is missing or has the wrong type.

#include <nlohmann/json.hpp>

#include "outlinekit/curation.hpp"
#include "outlinekit/grpo.hpp"
#include "outlinekit/judge.hpp"
#include "outlinekit/paper.hpp"
#include "outlinekit/reward.hpp"
#include "outlinekit/tree_metrics.hpp"

namespace outlinekit {

using json = nlohmann::json;

json paper_to_json(const PaperMeta& paper);
PaperMeta paper_from_json(const json& j);

/// {"topic", "papers", "reference_outline": str|null}
json task_to_json(const SurveyTask& task);
SurveyTask task_from_json(const json& j);

/// The task object extended with the survey's own "id", "title", "source",
/// "update_date" and an optional "cot".
json record_to_json(const SurveyRecord& record);
SurveyRecord record_from_json(const json& j);

/// Snapshot line that carries "outline" (text) and "references" next to the
/// usual metadata fields.
SurveyDocument document_from_json(const json& j);

json to_json(const RewardBreakdown& r);
json to_json(const DistanceReport& r);
json to_json(const Rejection& r);

GroupRollout rollout_from_json(const json& j);
json to_json(const GrpoResult& r);

json to_json(const JudgeReport& r);
/// Means and counts only; per-item reports are written separately.
json summary_to_json(const CorpusReport& r);

}  // namespace outlinekit
