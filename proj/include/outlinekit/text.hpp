#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace outlinekit::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string collapse_whitespace(std::string_view s);

/// Lowercase, drop one leading numbering token ("1.2.3", "IV.", "(a)"),
/// collapse internal whitespace and trim. Used for every heading comparison.
std::string normalize_heading(std::string_view heading);

/// Lowercase, punctuation folded to spaces, whitespace collapsed. Used to
/// match reference titles against the metadata corpus.
std::string normalize_title(std::string_view title);

/// Lowercase words split on any non-alphanumeric ASCII byte. Bytes >= 0x80
/// are kept inside words so UTF-8 letters are not treated as boundaries.
std::vector<std::string> words(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace outlinekit::text
