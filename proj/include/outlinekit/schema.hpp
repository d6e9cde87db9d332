#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outlinekit/outline.hpp"

namespace outlinekit {

/// Format constraints a generated outline must meet to earn the format
/// reward. All bounds are inclusive.
struct OutlineSchema {
  int max_depth = 4;
  int min_top_sections = 3;
  int max_top_sections = 20;
  int max_heading_chars = 200;
  bool require_citations_subset = true;

  /// Throws Error(ConfigInvalid) if the bounds are inconsistent.
  void validate() const;
};

enum class Rule {
  EmptyHeading,
  HeadingTooLong,
  TooDeep,
  TooFewSections,
  TooManySections,
  UnknownCitation,
};

/// Stable human-readable rule name, e.g. "too few top-level sections".
std::string_view to_string(Rule rule);

struct Violation {
  Rule rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationResult {
  bool pass = true;
  std::vector<Violation> violations;

  bool has(Rule rule) const;
  bool operator==(const ValidationResult&) const = default;
};

using PaperPool = std::optional<std::span<const std::string>>;

/// Pure check of a tree against the schema. Citation membership is only
/// tested when a pool is supplied and the schema asks for it.
ValidationResult validate_schema(const OutlineTree& tree, const OutlineSchema& schema,
                                 PaperPool pool = std::nullopt);

}  // namespace outlinekit
