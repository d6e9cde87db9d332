#include "outlinekit/judge.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

std::optional<double> first_number(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool sign = (s[i] == '-' || s[i] == '+') && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if (!sign && !std::isdigit(static_cast<unsigned char>(s[i]))) continue;
    std::size_t start = s[i] == '+' ? i + 1 : i;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + s.size(), value, std::chars_format::fixed);
    if (ec == std::errc()) return value;
  }
  return std::nullopt;
}

double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string_view display_name(Criterion c) {
  switch (c) {
    case Criterion::StructureLocate: return "Structure Locate";
    case Criterion::StructureDetail: return "Structure Detail";
    case Criterion::ContentExclusion: return "Content Exclusion";
    case Criterion::ContentDepth: return "Content Depth";
    case Criterion::PragmaticsConcise: return "Pragmatics Concise";
  }
  return "";
}

std::string_view key(Criterion c) {
  switch (c) {
    case Criterion::StructureLocate: return "structure_locate";
    case Criterion::StructureDetail: return "structure_detail";
    case Criterion::ContentExclusion: return "content_exclusion";
    case Criterion::ContentDepth: return "content_depth";
    case Criterion::PragmaticsConcise: return "pragmatics_concise";
  }
  return "";
}

std::string_view rubric_text(Criterion c) {
  switch (c) {
    case Criterion::StructureLocate:
      return "Adherence to conventional organizational frameworks (e.g., IMRaD) for efficient information "
             "retrieval.";
    case Criterion::StructureDetail:
      return "Appropriate space allocation based on topic importance and complexity, emphasizing core content "
             "over secondary details.";
    case Criterion::ContentExclusion:
      return "Clear boundaries between same-level sections to avoid redundant overlap.";
    case Criterion::ContentDepth:
      return "Integration of diverse reasoning structures (e.g., causal links, theory-to-application) and "
             "progressive logical chains across sections.";
    case Criterion::PragmaticsConcise:
      return "Concise yet descriptive section titles without overly broad expressions.";
  }
  return "";
}

std::string ConstantJudge::complete(const std::string&) const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "ANSWER: %.1f", score_);
  return buf;
}

std::string ConstantJudge::model_id() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "mock-constant-%.1f", score_);
  return buf;
}

double aggregate_total(std::span<const double> scores) {
  return std::accumulate(scores.begin(), scores.end(), 0.0);
}

std::string build_judge_prompt(Criterion criterion, std::string_view topic, const OutlineTree& outline) {
  if (outline.empty()) throw Error(ErrorCode::InvalidInput, "cannot judge an empty outline");
  std::ostringstream out;
  out << "You are an experienced reviewer of academic survey outlines.\n\n";
  out << "Evaluation criterion: " << display_name(criterion) << "\n";
  out << rubric_text(criterion) << "\n\n";
  out << "Survey topic: " << text::collapse_whitespace(topic) << "\n\n";
  out << "Outline:\n" << serialize_outline(outline) << "\n\n";
  out << "Judge the outline on this criterion only. Score it from 0 (very poor) to 10 (excellent); one "
         "decimal place is allowed.\n";
  out << "Finish with a single line of the form:\n" << kAnswerMarker << " <score>\n";
  return out.str();
}

double parse_judge_score(std::string_view response) {
  const std::string lowered = text::to_lower(response);
  const std::string marker = text::to_lower(kAnswerMarker);
  for (std::size_t pos = lowered.find(marker); pos != std::string::npos; pos = lowered.find(marker, pos + 1)) {
    std::string_view tail = response.substr(pos + marker.size());
    tail = tail.substr(0, tail.find('\n'));
    if (auto value = first_number(tail)) return std::clamp(*value, 0.0, 10.0);
  }
  throw Error(ErrorCode::NoScoreFound, "no score after '" + std::string(kAnswerMarker) + "'");
}

JudgeReport judge_outline(std::string_view topic, const OutlineTree& outline, const OutlineTree* reference,
                          const JudgeClient& client, int samples_per_criterion, const EditCostModel& costs) {
  if (samples_per_criterion < 1) throw Error(ErrorCode::InvalidInput, "samples_per_criterion must be >= 1");

  JudgeReport report;
  report.judge_model_id = client.model_id();
  for (Criterion c : kCriteria) {
    const std::string prompt = build_judge_prompt(c, topic, outline);
    double sum = 0.0;
    for (int s = 0; s < samples_per_criterion; ++s) {
      std::string response = client.complete(prompt);
      sum += parse_judge_score(response);
      report.raw_responses.push_back(std::move(response));
    }
    report.scores[static_cast<std::size_t>(c)] = sum / samples_per_criterion;
  }
  report.total = aggregate_total(report.scores);
  if (reference != nullptr) report.structural_distance = structural_distance(outline, *reference, costs);
  return report;
}

CorpusReport evaluate_corpus(std::span<const CorpusItem> items, const JudgeClient& client,
                             std::size_t concurrency_limit, int samples_per_criterion,
                             const EditCostModel& costs) {
  if (items.empty()) throw Error(ErrorCode::InvalidInput, "no items to evaluate");

  CorpusReport report;
  report.judge_model_id = client.model_id();
  report.items.resize(items.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      auto& slot = report.items[i];
      slot.id = items[i].id;
      try {
        slot.report = judge_outline(items[i].topic, items[i].generated, &items[i].reference, client,
                                    samples_per_criterion, costs);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(concurrency_limit, 1, items.size());
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  std::array<std::vector<double>, 5> columns;
  std::vector<double> totals;
  std::vector<double> distances;
  for (const auto& item : report.items) {
    if (!item.report) {
      ++report.excluded;
      continue;
    }
    ++report.succeeded;
    for (std::size_t c = 0; c < columns.size(); ++c) columns[c].push_back(item.report->scores[c]);
    totals.push_back(item.report->total);
    distances.push_back(item.report->structural_distance.value_or(0.0));
  }
  if (report.succeeded == 0) {
    throw Error(ErrorCode::NoSuccessfulItems, "all " + std::to_string(items.size()) + " items failed");
  }
  for (std::size_t c = 0; c < columns.size(); ++c) report.mean_scores[c] = sorted_mean(std::move(columns[c]));
  report.mean_total = sorted_mean(std::move(totals));
  report.mean_distance = sorted_mean(std::move(distances));
  return report;
}

std::string format_table(const CorpusReport& report, std::string_view label) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Item"};
  for (Criterion c : kCriteria) header.emplace_back(display_name(c));
  header.emplace_back("Total");
  header.emplace_back("Structural Distance");
  rows.push_back(header);

  auto row_of = [](std::string name, const std::array<double, 5>& scores, double total, double distance) {
    std::vector<std::string> row{std::move(name)};
    for (double s : scores) row.push_back(fixed2(s));
    row.push_back(fixed2(total));
    row.push_back(fixed2(distance));
    return row;
  };
  for (const auto& item : report.items) {
    if (!item.report) continue;
    rows.push_back(row_of(item.id, item.report->scores, item.report->total,
                          item.report->structural_distance.value_or(0.0)));
  }
  rows.push_back(row_of(std::string(label), report.mean_scores, report.mean_total, report.mean_distance));

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }

  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      const std::size_t pad = widths[c] - row[c].size();
      if (c == 0) {
        out += row[c] + std::string(pad, ' ');
      } else {
        out += std::string(pad, ' ') + row[c];
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  };
  emit(rows.front());
  std::size_t rule = 0;
  for (std::size_t w : widths) rule += w;
  out += std::string(rule + 2 * (widths.size() - 1), '-') + '\n';
  for (std::size_t r = 1; r + 1 < rows.size(); ++r) emit(rows[r]);
  out += std::string(rule + 2 * (widths.size() - 1), '-') + '\n';
  emit(rows.back());
  if (report.excluded > 0) out += "excluded items: " + std::to_string(report.excluded) + "\n";
  return out;
}

}  // namespace outlinekit
