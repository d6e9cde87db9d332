#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "outlinekit/outline.hpp"

namespace outlinekit {

enum class Source { Arxiv, Biorxiv, Medrxiv, Other };

std::string_view to_string(Source source);
/// Unknown names map to Source::Other.
Source parse_source(std::string_view name);

using Date = std::chrono::year_month_day;

/// Accepts "YYYY-MM-DD", optionally followed by a time part. Throws
/// Error(InvalidInput) for anything else or an impossible calendar date.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

struct PaperMeta {
  std::string id;
  std::string title;
  std::optional<std::string> abstract;
  std::optional<Date> update_date;
  Source source = Source::Other;

  bool has_abstract() const { return abstract.has_value() && !abstract->empty(); }
};

/// Throws Error(InvalidInput) when id is empty or the normalized title is empty.
void validate_paper(const PaperMeta& paper);

struct SurveyTask {
  std::string topic;
  std::vector<PaperMeta> papers;
  std::optional<OutlineTree> reference_outline;

  std::vector<std::string> paper_ids() const;
};

/// Checks N >= 1, per-paper invariants and pairwise-distinct ids.
void validate_task(const SurveyTask& task);

}  // namespace outlinekit
