#include "outlinekit/outline.hpp"

#include <optional>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

struct FlatHeading {
  int level = 0;
  std::string heading;
  std::vector<std::string> citations;
};

bool is_blank(char c) { return c == ' ' || c == '\t'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

void finalize(OutlineNode& node, int level, std::size_t& count, int& depth) {
  if (text::trim(node.heading).empty()) {
    throw Error(ErrorCode::MalformedHeading, "heading with empty title at level " + std::to_string(level));
  }
  node.level = level;
  ++count;
  if (level > depth) depth = level;
  for (auto& child : node.children) finalize(child, level + 1, count, depth);
}

void collect_citations(const OutlineNode& node, std::vector<std::string>& out) {
  out.insert(out.end(), node.citations.begin(), node.citations.end());
  for (const auto& child : node.children) collect_citations(child, out);
}

// Splits "Title [a; b]" into the title and its citation ids.
void split_citations(std::string_view title, FlatHeading& out) {
  title = text::trim(title);
  if (!title.empty() && title.back() == ']') {
    if (std::size_t open = title.rfind('['); open != std::string_view::npos) {
      for (auto& id : text::split(title.substr(open + 1, title.size() - open - 2), ';')) {
        auto trimmed = text::trim(id);
        if (!trimmed.empty()) out.citations.emplace_back(trimmed);
      }
      title = text::trim(title.substr(0, open));
    }
  }
  out.heading = text::collapse_whitespace(title);
}

// ATX: up to three spaces, 1+ '#', then whitespace or end of line.
std::optional<FlatHeading> match_atx(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  std::size_t hashes = 0;
  while (i + hashes < line.size() && line[i + hashes] == '#') ++hashes;
  if (hashes == 0) return std::nullopt;
  std::size_t rest = i + hashes;
  if (rest < line.size() && !is_blank(line[rest])) return std::nullopt;

  std::string_view title = text::trim(line.substr(rest));
  // Optional closing sequence: " ###" at the end, or a title made of '#' only.
  std::size_t end = title.size();
  while (end > 0 && title[end - 1] == '#') --end;
  if (end == 0) {
    title = {};
  } else if (end < title.size() && is_blank(title[end - 1])) {
    title = text::trim(title.substr(0, end));
  }

  FlatHeading h;
  h.level = static_cast<int>(hashes);
  split_citations(title, h);
  return h;
}

// Numbered: "1", "1.", "1.2", "1.2.3." with 1-3 digit components, then
// whitespace or end of line.
std::optional<FlatHeading> match_numbered(std::string_view line) {
  line = text::trim(line);
  std::size_t i = 0;
  int components = 0;
  while (true) {
    std::size_t digits = 0;
    while (i < line.size() && is_digit(line[i]) && digits < 4) {
      ++i;
      ++digits;
    }
    if (digits == 0 || digits > 3) return std::nullopt;
    ++components;
    if (i < line.size() && line[i] == '.') {
      ++i;
      if (i < line.size() && is_digit(line[i])) continue;
    }
    break;
  }
  if (i < line.size() && !is_blank(line[i])) return std::nullopt;

  FlatHeading h;
  h.level = components;
  split_citations(line.substr(i), h);
  return h;
}

std::vector<OutlineNode> build(const std::vector<FlatHeading>& flat, std::size_t& pos, int level) {
  std::vector<OutlineNode> out;
  while (pos < flat.size() && flat[pos].level == level) {
    OutlineNode node;
    node.heading = flat[pos].heading;
    node.citations = flat[pos].citations;
    node.level = level;
    ++pos;
    node.children = build(flat, pos, level + 1);
    out.push_back(std::move(node));
  }
  return out;
}

void serialize_node(const OutlineNode& node, int level, std::string& out) {
  if (!out.empty()) out.push_back('\n');
  out.append(static_cast<std::size_t>(level), '#');
  out.push_back(' ');
  out += node.heading;
  if (!node.citations.empty()) {
    out += " [";
    for (std::size_t i = 0; i < node.citations.size(); ++i) {
      if (i > 0) out += "; ";
      out += node.citations[i];
    }
    out += ']';
  }
  for (const auto& child : node.children) serialize_node(child, level + 1, out);
}

bool nodes_equal(const OutlineNode& a, const OutlineNode& b) {
  if (a.children.size() != b.children.size() || a.citations != b.citations) return false;
  if (text::normalize_heading(a.heading) != text::normalize_heading(b.heading)) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!nodes_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace

OutlineTree::OutlineTree() = default;

OutlineTree::OutlineTree(std::vector<OutlineNode> sections) {
  root_.children = std::move(sections);
  for (auto& section : root_.children) finalize(section, 1, node_count_, depth_);
}

std::vector<std::string> OutlineTree::citations() const {
  std::vector<std::string> out;
  collect_citations(root_, out);
  return out;
}

OutlineTree parse_outline(std::string_view input) {
  std::vector<FlatHeading> flat;
  std::vector<int> open_levels;  // raw levels of the current ancestor chain
  std::size_t line_no = 0;

  for (auto& raw : text::split(input, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::optional<FlatHeading> h = match_atx(line);
    if (!h) h = match_numbered(line);
    if (!h) continue;
    if (h->heading.empty()) {
      throw Error(ErrorCode::MalformedHeading, "heading with empty title on line " + std::to_string(line_no));
    }

    while (!open_levels.empty() && open_levels.back() >= h->level) open_levels.pop_back();
    open_levels.push_back(h->level);
    h->level = static_cast<int>(open_levels.size());
    flat.push_back(std::move(*h));
  }

  if (flat.empty()) throw Error(ErrorCode::EmptyOutline, "no heading lines found");

  std::size_t pos = 0;
  return OutlineTree(build(flat, pos, 1));
}

std::string serialize_outline(const OutlineTree& tree) {
  std::string out;
  for (const auto& section : tree.sections()) serialize_node(section, 1, out);
  return out;
}

bool canonical_equal(const OutlineTree& a, const OutlineTree& b) {
  return nodes_equal(a.root(), b.root());
}

}  // namespace outlinekit
