#include "outlinekit/text.hpp"

#include <cctype>

namespace outlinekit::text {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_word_byte(char c) { return is_alnum(c) || static_cast<unsigned char>(c) >= 0x80; }

bool is_roman(char c) {
  switch (c) {
    case 'i': case 'v': case 'x': case 'l': case 'c': case 'd': case 'm':
      return true;
    default:
      return false;
  }
}

// Length of a leading numbering token in an already-lowercased string, or 0.
// The token must be followed by whitespace so bare words are never eaten.
std::size_t numbering_prefix(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && is_digit(s[0])) {
    while (i < s.size() && (is_digit(s[i]) || s[i] == '.')) ++i;
  } else if (!s.empty() && s[0] == '(') {
    i = 1;
    while (i < s.size() && is_alnum(s[i])) ++i;
    if (i == 1 || i >= s.size() || s[i] != ')') return 0;
    ++i;
  } else {
    while (i < s.size() && is_roman(s[i])) ++i;
    if (i == 0 || i >= s.size() || s[i] != '.') return 0;
    ++i;
  }
  if (i >= s.size() || !is_space(s[i])) return 0;
  return i;
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string normalize_heading(std::string_view heading) {
  std::string lowered = to_lower(trim(heading));
  std::string_view rest = lowered;
  if (std::size_t n = numbering_prefix(rest); n > 0) rest.remove_prefix(n);
  return collapse_whitespace(rest);
}

std::string normalize_title(std::string_view title) {
  std::string folded = to_lower(title);
  for (char& c : folded) {
    if (!is_word_byte(c)) c = ' ';
  }
  return collapse_whitespace(folded);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace outlinekit::text
