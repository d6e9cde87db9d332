#include "outlinekit/schema.hpp"

#include <algorithm>
#include <unordered_set>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

void check_headings(const OutlineNode& node, const OutlineSchema& schema, ValidationResult& out) {
  for (const auto& child : node.children) {
    std::string normalized = text::normalize_heading(child.heading);
    if (normalized.empty()) {
      out.violations.push_back({Rule::EmptyHeading, "empty heading at level " + std::to_string(child.level)});
    } else if (utf8_length(child.heading) > static_cast<std::size_t>(schema.max_heading_chars)) {
      out.violations.push_back({Rule::HeadingTooLong, child.heading.substr(0, 40)});
    }
    check_headings(child, schema, out);
  }
}

}  // namespace

void OutlineSchema::validate() const {
  if (max_depth < 1) throw Error(ErrorCode::ConfigInvalid, "schema max_depth must be >= 1");
  if (min_top_sections < 0 || min_top_sections > max_top_sections) {
    throw Error(ErrorCode::ConfigInvalid, "schema needs 0 <= min_top_sections <= max_top_sections");
  }
  if (max_heading_chars < 1) throw Error(ErrorCode::ConfigInvalid, "schema max_heading_chars must be >= 1");
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::EmptyHeading: return "empty heading";
    case Rule::HeadingTooLong: return "heading too long";
    case Rule::TooDeep: return "exceeds max depth";
    case Rule::TooFewSections: return "too few top-level sections";
    case Rule::TooManySections: return "too many top-level sections";
    case Rule::UnknownCitation: return "unknown citation";
  }
  return "unknown rule";
}

bool ValidationResult::has(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [rule](const Violation& v) { return v.rule == rule; });
}

ValidationResult validate_schema(const OutlineTree& tree, const OutlineSchema& schema, PaperPool pool) {
  ValidationResult result;

  if (tree.depth() > schema.max_depth) {
    result.violations.push_back({Rule::TooDeep, "depth " + std::to_string(tree.depth()) + " > " +
                                                    std::to_string(schema.max_depth)});
  }
  const auto sections = static_cast<long long>(tree.section_count());
  if (sections < schema.min_top_sections) {
    result.violations.push_back({Rule::TooFewSections, std::to_string(sections) + " < " +
                                                           std::to_string(schema.min_top_sections)});
  }
  if (sections > schema.max_top_sections) {
    result.violations.push_back({Rule::TooManySections, std::to_string(sections) + " > " +
                                                            std::to_string(schema.max_top_sections)});
  }

  check_headings(tree.root(), schema, result);

  if (schema.require_citations_subset && pool) {
    std::unordered_set<std::string_view> known(pool->begin(), pool->end());
    std::unordered_set<std::string> reported;
    for (auto& id : tree.citations()) {
      if (!known.contains(id) && reported.insert(id).second) {
        result.violations.push_back({Rule::UnknownCitation, id});
      }
    }
  }

  result.pass = result.violations.empty();
  return result;
}

}  // namespace outlinekit
