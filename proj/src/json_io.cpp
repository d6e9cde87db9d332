#include "outlinekit/json_io.hpp"

#include "outlinekit/error.hpp"

namespace outlinekit {

namespace {

const json& require(const json& j, const char* field) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + field + "'");
  return *it;
}

std::string require_string(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_string()) throw Error(ErrorCode::InvalidInput, std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::InvalidInput, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::vector<double> number_array(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_array()) throw Error(ErrorCode::InvalidInput, std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string("field '") + field + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<PaperMeta> papers_from(const json& j, const char* field) {
  std::vector<PaperMeta> out;
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) throw Error(ErrorCode::InvalidInput, std::string("field '") + field + "' must be an array");
  for (const auto& p : *it) out.push_back(paper_from_json(p));
  return out;
}

json papers_to(const std::vector<PaperMeta>& papers) {
  json arr = json::array();
  for (const auto& p : papers) arr.push_back(paper_to_json(p));
  return arr;
}

}  // namespace

json paper_to_json(const PaperMeta& paper) {
  return {
      {"id", paper.id},
      {"title", paper.title},
      {"abstract", nullable(paper.abstract)},
      {"update_date", paper.update_date ? json(format_date(*paper.update_date)) : json(nullptr)},
      {"source", std::string(to_string(paper.source))},
  };
}

PaperMeta paper_from_json(const json& j) {
  PaperMeta p;
  p.id = require_string(j, "id");
  p.title = require_string(j, "title");
  p.abstract = optional_string(j, "abstract");
  if (auto date = optional_string(j, "update_date"); date && !date->empty()) p.update_date = parse_date(*date);
  if (auto source = optional_string(j, "source")) p.source = parse_source(*source);
  return p;
}

json task_to_json(const SurveyTask& task) {
  return {
      {"topic", task.topic},
      {"papers", papers_to(task.papers)},
      {"reference_outline",
       task.reference_outline ? json(serialize_outline(*task.reference_outline)) : json(nullptr)},
  };
}

SurveyTask task_from_json(const json& j) {
  SurveyTask task;
  task.topic = require_string(j, "topic");
  task.papers = papers_from(j, "papers");
  if (auto outline = optional_string(j, "reference_outline")) task.reference_outline = parse_outline(*outline);
  return task;
}

json record_to_json(const SurveyRecord& record) {
  json j = paper_to_json(record.survey);
  j.erase("abstract");
  j.update(task_to_json(record.task));
  j["cot"] = nullable(record.cot);
  return j;
}

SurveyRecord record_from_json(const json& j) {
  SurveyRecord record;
  record.survey = paper_from_json(j);
  record.task = task_from_json(j);
  record.cot = optional_string(j, "cot");
  return record;
}

SurveyDocument document_from_json(const json& j) {
  SurveyDocument doc;
  doc.meta = paper_from_json(j);
  doc.outline_text = require_string(j, "outline");
  doc.references = papers_from(j, "references");
  return doc;
}

json to_json(const RewardBreakdown& r) {
  return {{"r_struct", r.r_struct}, {"r_format", r.r_format}, {"r_total", r.r_total}, {"lambda_used", r.lambda_used}};
}

json to_json(const DistanceReport& r) {
  return {{"ted", r.ted},
          {"n_ref", r.n_ref},
          {"n_gen", r.n_gen},
          {"normalized_distance", r.normalized_distance},
          {"structural_reward", r.structural_reward}};
}

json to_json(const Rejection& r) {
  return {{"record_id", r.record_id}, {"stage", r.stage}, {"reason", r.reason}};
}

GroupRollout rollout_from_json(const json& j) {
  const json& candidates = require(j, "candidates");
  if (!candidates.is_array()) throw Error(ErrorCode::InvalidInput, "field 'candidates' must be an array");
  GroupRollout group;
  for (const auto& c : candidates) {
    Candidate cand;
    cand.policy_logprobs = number_array(c, "policy_logprobs");
    cand.old_logprobs = number_array(c, "old_logprobs");
    cand.ref_logprobs = number_array(c, "ref_logprobs");
    const json& reward = require(c, "reward");
    if (!reward.is_number()) throw Error(ErrorCode::InvalidInput, "field 'reward' must be a number");
    cand.reward = reward.get<double>();
    group.candidates.push_back(std::move(cand));
  }
  return group;
}

json to_json(const GrpoResult& r) {
  json diagnostics = json::array();
  for (const auto& d : r.diagnostics) {
    diagnostics.push_back({{"ratio", d.ratio},
                           {"advantage", d.advantage},
                           {"surrogate", d.surrogate},
                           {"clipped", d.clipped},
                           {"kl", d.kl}});
  }
  return {{"objective", r.objective}, {"loss", r.loss}, {"kl", r.kl}, {"diagnostics", diagnostics}};
}

json to_json(const JudgeReport& r) {
  json scores = json::object();
  for (Criterion c : kCriteria) scores[std::string(key(c))] = r.score(c);
  return {
      {"scores", scores},
      {"total", r.total},
      {"structural_distance", r.structural_distance ? json(*r.structural_distance) : json(nullptr)},
      {"judge_model_id", r.judge_model_id},
      {"raw_responses", r.raw_responses},
  };
}

json summary_to_json(const CorpusReport& r) {
  json means = json::object();
  for (Criterion c : kCriteria) means[std::string(key(c))] = r.mean_scores[static_cast<std::size_t>(c)];
  means["total"] = r.mean_total;
  means["structural_distance"] = r.mean_distance;

  json failures = json::array();
  for (const auto& item : r.items) {
    if (!item.report) failures.push_back({{"id", item.id}, {"error", item.error}});
  }
  return {{"judge_model_id", r.judge_model_id},
          {"succeeded", r.succeeded},
          {"excluded", r.excluded},
          {"means", means},
          {"failures", failures}};
}

}  // namespace outlinekit
