#include "outlinekit/curation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

bool contains_phrase(const std::vector<std::string>& words, const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > words.size()) return false;
  return std::search(words.begin(), words.end(), phrase.begin(), phrase.end()) != words.end();
}

void level_counts(const OutlineNode& node, std::vector<std::size_t>& counts) {
  for (const auto& child : node.children) {
    const auto level = static_cast<std::size_t>(child.level);
    if (counts.size() <= level) counts.resize(level + 1, 0);
    ++counts[level];
    level_counts(child, counts);
  }
}

bool matches_strip_pattern(const std::string& heading, const std::vector<std::string>& patterns) {
  const std::string normalized = text::normalize_heading(heading);
  return std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) {
    const std::string pattern = text::normalize_heading(p);
    return !pattern.empty() && normalized.starts_with(pattern);
  });
}

std::vector<OutlineNode> strip_children(const std::vector<OutlineNode>& children,
                                        const std::vector<std::string>& patterns) {
  std::vector<OutlineNode> kept;
  for (const auto& child : children) {
    if (matches_strip_pattern(child.heading, patterns)) continue;
    OutlineNode copy{child.heading, child.level, strip_children(child.children, patterns), child.citations};
    kept.push_back(std::move(copy));
  }
  return kept;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

struct DocumentOutcome {
  std::optional<SurveyRecord> record;
  std::optional<Rejection> rejection;
  bool candidate = false;
  std::size_t exact = 0;
  std::size_t similar = 0;
  std::size_t missing = 0;
};

DocumentOutcome process_document(const SurveyDocument& doc, const CorpusIndex& index,
                                 const EmbeddingProvider* embedder, const CurationConfig& cfg) {
  DocumentOutcome out;
  auto reject = [&](std::string stage, std::string reason) {
    out.rejection = Rejection{doc.meta.id, std::move(stage), std::move(reason)};
    return out;
  };

  if (!is_survey_candidate(doc.meta, cfg)) return reject("keyword", "no survey keyword in title");
  out.candidate = true;

  OutlineTree outline;
  try {
    outline = parse_outline(doc.outline_text);
  } catch (const Error& e) {
    return reject("parse", e.what());
  }

  std::vector<PaperMeta> bibliography;
  std::unordered_set<std::string> seen;
  for (const auto& ref : doc.references) {
    try {
      validate_paper(ref);
    } catch (const Error& e) {
      return reject("parse", std::string("invalid reference entry: ") + e.what());
    }
    if (seen.insert(ref.id).second) bibliography.push_back(ref);
  }

  outline = strip_nonessential(outline, cfg);
  if (auto verdict = structural_filter(outline, cfg); !verdict.accepted) return reject("structure", verdict.reason);
  if (bibliography.size() < static_cast<std::size_t>(cfg.min_references)) {
    return reject("structure", "too few references");
  }

  if (auto integrity = check_reference_integrity(outline, bibliography); !integrity.ok) {
    return reject("integrity", "missing references: " + join(integrity.missing, ", "));
  }

  auto completion = complete_references(bibliography, index, embedder, cfg);
  out.exact = completion.exact_matches;
  out.similar = completion.similarity_matches;
  out.missing = completion.unmatched;

  SurveyRecord record;
  record.survey = doc.meta;
  record.task.topic = text::collapse_whitespace(doc.meta.title);
  record.task.papers = std::move(completion.bibliography);
  record.task.reference_outline = std::move(outline);
  out.record = std::move(record);
  return out;
}

}  // namespace

void CurationConfig::validate() const {
  if (survey_keywords.empty()) throw Error(ErrorCode::ConfigInvalid, "survey_keywords must not be empty");
  if (min_top_sections < 0 || min_top_sections > max_top_sections) {
    throw Error(ErrorCode::ConfigInvalid, "curation needs 0 <= min_top_sections <= max_top_sections");
  }
  if (max_depth < 1) throw Error(ErrorCode::ConfigInvalid, "curation max_depth must be >= 1");
  if (min_references < 0) throw Error(ErrorCode::ConfigInvalid, "min_references must be >= 0");
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0)) {
    throw Error(ErrorCode::ConfigInvalid, "similarity_threshold must lie in [0, 1]");
  }
  if (!test_cutoff_date.ok()) throw Error(ErrorCode::ConfigInvalid, "test_cutoff_date is not a valid date");
}

const OutlineTree& SurveyRecord::outline() const {
  if (!task.reference_outline) throw Error(ErrorCode::InvalidInput, "record '" + survey.id + "' has no outline");
  return *task.reference_outline;
}

bool is_survey_candidate(const PaperMeta& meta, const CurationConfig& cfg) {
  const auto title_words = text::words(meta.title);
  return std::any_of(cfg.survey_keywords.begin(), cfg.survey_keywords.end(),
                     [&](const std::string& kw) { return contains_phrase(title_words, text::words(kw)); });
}

FilterResult structural_filter(const OutlineTree& outline, const CurationConfig& cfg) {
  const auto sections = static_cast<long long>(outline.section_count());
  if (sections < cfg.min_top_sections) return {false, "too few top-level sections"};
  if (sections > cfg.max_top_sections) return {false, "too many top-level sections"};
  if (outline.depth() > cfg.max_depth) return {false, "exceeds max depth"};

  std::vector<std::size_t> counts;
  level_counts(outline.root(), counts);
  for (std::size_t level = 1; level < counts.size(); ++level) {
    if (counts[level] == 0) return {false, "empty level above a populated level"};
  }
  return {};
}

IntegrityResult check_reference_integrity(const OutlineTree& outline, std::span<const PaperMeta> bibliography) {
  std::unordered_set<std::string_view> known;
  for (const auto& p : bibliography) known.insert(p.id);
  IntegrityResult result;
  std::unordered_set<std::string> reported;
  for (auto& id : outline.citations()) {
    if (!known.contains(id) && reported.insert(id).second) result.missing.push_back(id);
  }
  result.ok = result.missing.empty();
  return result;
}

OutlineTree strip_nonessential(const OutlineTree& outline, const CurationConfig& cfg) {
  return OutlineTree(strip_children(outline.sections(), cfg.strip_sections));
}

CompletionResult complete_references(std::span<const PaperMeta> bibliography, const CorpusIndex& index,
                                     const EmbeddingProvider* embedder, const CurationConfig& cfg) {
  CompletionResult result;
  result.bibliography.assign(bibliography.begin(), bibliography.end());

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < result.bibliography.size(); ++i) {
    auto& ref = result.bibliography[i];
    if (ref.has_abstract()) continue;
    if (const PaperMeta* hit = index.exact(ref.title)) {
      ref.abstract = hit->abstract;
      ++result.exact_matches;
    } else {
      pending.push_back(i);
    }
  }

  if (!pending.empty() && embedder != nullptr && index.has_embeddings()) {
    std::vector<std::string> titles;
    titles.reserve(pending.size());
    for (std::size_t i : pending) titles.push_back(result.bibliography[i].title);
    const auto vectors = embedder->embed(titles);
    if (vectors.size() != titles.size()) {
      throw Error(ErrorCode::EmbedderUnavailable, "embedder returned the wrong number of vectors");
    }
    std::vector<std::size_t> still_pending;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      auto neighbor = index.nearest(vectors[k]);
      if (neighbor && neighbor->similarity >= cfg.similarity_threshold) {
        result.bibliography[pending[k]].abstract = neighbor->paper->abstract;
        ++result.similarity_matches;
      } else {
        still_pending.push_back(pending[k]);
      }
    }
    pending = std::move(still_pending);
  }

  result.unmatched = pending.size();
  return result;
}

DatasetSplit split_dataset(std::span<const SurveyRecord> records, const CurationConfig& cfg, double rl_fraction,
                           std::uint64_t seed) {
  if (!(rl_fraction > 0.0 && rl_fraction < 1.0)) throw Error(ErrorCode::InvalidInput, "rl_fraction must lie in (0, 1)");

  std::vector<std::size_t> train;
  std::vector<bool> is_test(records.size(), false);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& date = records[i].survey.update_date;
    if (date && *date >= cfg.test_cutoff_date) {
      is_test[i] = true;
    } else {
      train.push_back(i);
    }
  }

  // Hand-rolled Fisher-Yates: std::shuffle's sequence differs between
  // standard libraries, mt19937_64 output does not.
  std::mt19937_64 rng(seed);
  for (std::size_t i = train.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(train[i - 1], train[j]);
  }
  const auto rl_count = static_cast<std::size_t>(std::llround(rl_fraction * static_cast<double>(train.size())));
  std::vector<bool> is_rl(records.size(), false);
  for (std::size_t k = 0; k < rl_count; ++k) is_rl[train[k]] = true;

  DatasetSplit split;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& bucket = is_test[i] ? split.test : (is_rl[i] ? split.rl : split.sft);
    bucket.push_back(records[i].id());
  }
  return split;
}

std::string build_cot_prompt(const SurveyRecord& record) {
  const std::string topic = text::collapse_whitespace(record.task.topic);
  if (topic.empty()) throw Error(ErrorCode::InvalidInput, "record '" + record.id() + "' has no topic");
  if (record.task.papers.empty()) throw Error(ErrorCode::InvalidInput, "record '" + record.id() + "' has no papers");

  std::ostringstream out;
  out << "You are an expert researcher planning a literature survey.\n\n";
  out << "Topic: " << topic << "\n\n";
  out << "Candidate papers (" << record.task.papers.size() << "):\n";
  std::size_t n = 0;
  for (const auto& paper : record.task.papers) {
    out << "[" << ++n << "] id: " << paper.id << "\n";
    out << "    Title: " << text::collapse_whitespace(paper.title) << "\n";
    out << "    Abstract: " << (paper.has_abstract() ? text::collapse_whitespace(*paper.abstract) : "(no abstract)")
        << "\n";
  }
  out << "\nInstructions:\n";
  out << "1. Cluster the candidate papers into coherent research themes.\n";
  out << "2. Derive a hierarchical taxonomy of the topic from those themes.\n";
  out << "3. Write the final survey outline that follows the taxonomy.\n\n";
  out << "Put all of your reasoning between " << kReasoningOpen << " and " << kReasoningClose << ". After "
      << kReasoningClose << ", output only the outline, one heading per line: \"#\" for top-level sections, "
      << "\"##\" for subsections, and so on. End a heading with the ids of the papers it covers in square "
      << "brackets separated by semicolons, for example \"## Message Passing [p1; p7]\". Cite only ids listed "
      << "above.\n";
  return out.str();
}

CotVerdict validate_cot_response(std::string_view response, const SurveyRecord& record,
                                 const OutlineSchema& schema) {
  CotVerdict verdict;
  auto reject = [&](std::string reason, std::string detail = {}) {
    verdict.accepted = false;
    verdict.reason = std::move(reason);
    verdict.detail = std::move(detail);
    verdict.outline.reset();
    return verdict;
  };

  const auto open = response.find(kReasoningOpen);
  const auto close = response.find(kReasoningClose);
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    return reject("missing reasoning segment");
  }
  verdict.reasoning = std::string(text::trim(response.substr(open + kReasoningOpen.size(), close - open - kReasoningOpen.size())));
  if (verdict.reasoning.empty()) return reject("empty reasoning segment");

  const auto outline_text = response.substr(close + kReasoningClose.size());
  try {
    verdict.outline = parse_outline(outline_text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyOutline) return reject("no outline found");
    return reject("malformed heading", e.what());
  }

  const auto ids = record.task.paper_ids();
  const auto validation = validate_schema(*verdict.outline, schema, std::span<const std::string>(ids));
  if (!validation.pass) {
    const auto& first = validation.violations.front();
    return reject(std::string(to_string(first.rule)), first.detail);
  }
  verdict.accepted = true;
  return verdict;
}

CurationOutput curate(std::span<const SurveyDocument> documents, const CorpusIndex& index,
                      const EmbeddingProvider* embedder, const CurationConfig& cfg, std::size_t workers) {
  cfg.validate();
  std::vector<DocumentOutcome> outcomes(documents.size());
  std::vector<bool> duplicate(documents.size(), false);
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < documents.size(); ++i) duplicate[i] = !seen.insert(documents[i].meta.id).second;
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < documents.size(); i = next++) {
      if (duplicate[i]) {
        outcomes[i].rejection = Rejection{documents[i].meta.id, "parse", "duplicate id"};
        continue;
      }
      outcomes[i] = process_document(documents[i], index, embedder, cfg);
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, documents.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  CurationOutput out;
  out.stats.documents = documents.size();
  for (auto& o : outcomes) {
    if (o.candidate) ++out.stats.candidates;
    out.stats.abstracts_exact += o.exact;
    out.stats.abstracts_similar += o.similar;
    out.stats.abstracts_missing += o.missing;
    if (o.rejection) {
      if (o.rejection->stage == "parse") ++out.stats.parse_rejected;
      if (o.rejection->stage == "structure") ++out.stats.structurally_rejected;
      if (o.rejection->stage == "integrity") ++out.stats.integrity_rejected;
      out.rejections.push_back(std::move(*o.rejection));
    }
    if (o.record) out.records.push_back(std::move(*o.record));
  }
  out.stats.accepted = out.records.size();
  return out;
}

}  // namespace outlinekit
