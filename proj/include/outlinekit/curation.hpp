#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "outlinekit/embedding.hpp"
#include "outlinekit/outline.hpp"
#include "outlinekit/paper.hpp"
#include "outlinekit/schema.hpp"

namespace outlinekit {

struct CurationConfig {
  std::vector<std::string> survey_keywords{"survey", "review", "overview", "meta-analysis"};
  int min_top_sections = 3;
  int max_top_sections = 30;
  int max_depth = 4;
  int min_references = 10;
  std::vector<std::string> strip_sections{"acknowledgment",        "acknowledgements",    "appendix",
                                          "funding",               "conflict of interest", "author contributions"};
  double similarity_threshold = 0.90;
  Date test_cutoff_date{std::chrono::year(2025), std::chrono::January, std::chrono::day(1)};

  void validate() const;
};

/// A curated survey: its own metadata, the task built from it (topic, paper
/// pool = bibliography, reference outline) and optional distilled reasoning.
struct SurveyRecord {
  PaperMeta survey;
  SurveyTask task;
  std::optional<std::string> cot;

  const std::string& id() const { return survey.id; }
  Source source() const { return survey.source; }
  const std::vector<PaperMeta>& bibliography() const { return task.papers; }
  /// Throws Error(InvalidInput) if the record carries no outline.
  const OutlineTree& outline() const;
};

struct FilterResult {
  bool accepted = true;
  std::string reason;
};

struct IntegrityResult {
  bool ok = true;
  std::vector<std::string> missing;  // dangling ids, first-appearance order
};

/// True iff some keyword occurs as whole words in the title, case-insensitive.
/// Hyphens and other punctuation are word boundaries, so "Peer-review" and
/// "meta-analysis" both match.
bool is_survey_candidate(const PaperMeta& meta, const CurationConfig& cfg);

/// Top-level section count within bounds, depth within bound, and no empty
/// level above a populated one.
FilterResult structural_filter(const OutlineTree& outline, const CurationConfig& cfg);

IntegrityResult check_reference_integrity(const OutlineTree& outline, std::span<const PaperMeta> bibliography);

/// Drops every subtree whose normalized heading starts with one of the strip
/// patterns, at any depth.
OutlineTree strip_nonessential(const OutlineTree& outline, const CurationConfig& cfg);

struct CompletionResult {
  std::vector<PaperMeta> bibliography;
  std::size_t exact_matches = 0;
  std::size_t similarity_matches = 0;
  std::size_t unmatched = 0;
};

/// Attaches abstracts to references that lack one: exact normalized-title
/// match first, then the nearest corpus title by cosine similarity if it
/// reaches cfg.similarity_threshold. Existing abstracts, ids and titles are
/// never touched. Pass a null embedder for exact-match-only mode.
CompletionResult complete_references(std::span<const PaperMeta> bibliography, const CorpusIndex& index,
                                     const EmbeddingProvider* embedder, const CurationConfig& cfg);

struct DatasetSplit {
  std::vector<std::string> sft;
  std::vector<std::string> rl;
  std::vector<std::string> test;
};

/// Records dated on or after the cutoff go to test. The rest are shuffled
/// with a seeded generator and the first round(rl_fraction * n) go to rl.
/// Each list keeps input order.
DatasetSplit split_dataset(std::span<const SurveyRecord> records, const CurationConfig& cfg, double rl_fraction,
                           std::uint64_t seed);

inline constexpr std::string_view kReasoningOpen = "<think>";
inline constexpr std::string_view kReasoningClose = "</think>";

/// Distillation prompt for a reasoning model. Throws Error(InvalidInput) for
/// a record without a topic or papers.
std::string build_cot_prompt(const SurveyRecord& record);

struct CotVerdict {
  bool accepted = false;
  std::string reason;  // rule name on rejection
  std::string detail;
  std::string reasoning;
  std::optional<OutlineTree> outline;
};

/// Accepts "<think>reasoning</think>" followed by an outline that parses and
/// passes the schema against the record's paper pool.
CotVerdict validate_cot_response(std::string_view response, const SurveyRecord& record,
                                 const OutlineSchema& schema);

// Full pipeline over raw snapshot documents.

/// A snapshot entry that carries an extracted outline and reference list.
struct SurveyDocument {
  PaperMeta meta;
  std::string outline_text;
  std::vector<PaperMeta> references;
};

struct Rejection {
  std::string record_id;
  std::string stage;  // keyword | parse | structure | integrity
  std::string reason;
};

struct CurationStats {
  std::size_t documents = 0;
  std::size_t candidates = 0;
  std::size_t parse_rejected = 0;
  std::size_t structurally_rejected = 0;
  std::size_t integrity_rejected = 0;
  std::size_t accepted = 0;
  std::size_t abstracts_exact = 0;
  std::size_t abstracts_similar = 0;
  std::size_t abstracts_missing = 0;
};

struct CurationOutput {
  std::vector<SurveyRecord> records;
  std::vector<Rejection> rejections;
  CurationStats stats;
};

/// keyword -> parse -> strip -> structure -> integrity -> abstract
/// completion. Documents are processed by up to `workers` threads; output
/// order follows input order.
CurationOutput curate(std::span<const SurveyDocument> documents, const CorpusIndex& index,
                      const EmbeddingProvider* embedder, const CurationConfig& cfg, std::size_t workers = 1);

}  // namespace outlinekit
