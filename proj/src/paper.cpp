#include "outlinekit/paper.hpp"

#include <charconv>
#include <cstdio>
#include <unordered_set>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::Arxiv: return "arxiv";
    case Source::Biorxiv: return "biorxiv";
    case Source::Medrxiv: return "medrxiv";
    case Source::Other: return "other";
  }
  return "other";
}

Source parse_source(std::string_view name) {
  std::string lowered = text::to_lower(text::trim(name));
  if (lowered == "arxiv") return Source::Arxiv;
  if (lowered == "biorxiv") return Source::Biorxiv;
  if (lowered == "medrxiv") return Source::Medrxiv;
  return Source::Other;
}

Date parse_date(std::string_view input) {
  auto s = text::trim(input);
  auto bad = [&] { return Error(ErrorCode::InvalidInput, "invalid date '" + std::string(input) + "'"); };
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') throw bad();
  if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') throw bad();

  auto field = [&](std::size_t pos, std::size_t len) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
    if (ec != std::errc() || ptr != s.data() + pos + len) throw bad();
    return value;
  };
  Date date{std::chrono::year(field(0, 4)), std::chrono::month(static_cast<unsigned>(field(5, 2))),
            std::chrono::day(static_cast<unsigned>(field(8, 2)))};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

void validate_paper(const PaperMeta& paper) {
  if (paper.id.empty()) throw Error(ErrorCode::InvalidInput, "paper with empty id");
  if (text::collapse_whitespace(paper.title).empty()) {
    throw Error(ErrorCode::InvalidInput, "paper '" + paper.id + "' has an empty title");
  }
}

std::vector<std::string> SurveyTask::paper_ids() const {
  std::vector<std::string> ids;
  ids.reserve(papers.size());
  for (const auto& p : papers) ids.push_back(p.id);
  return ids;
}

void validate_task(const SurveyTask& task) {
  if (task.papers.empty()) throw Error(ErrorCode::InvalidInput, "survey task has no papers");
  std::unordered_set<std::string> seen;
  for (const auto& paper : task.papers) {
    validate_paper(paper);
    if (!seen.insert(paper.id).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate paper id '" + paper.id + "'");
    }
  }
}

}  // namespace outlinekit
