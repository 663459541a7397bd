#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace biblionet::text {

/// ASCII lower-casing; bytes >= 0x80 pass through untouched.
std::string to_lower_ascii(std::string_view s);

/// Trims and squeezes every whitespace run to a single space.
std::string collapse_whitespace(std::string_view s);

/// Replaces ASCII punctuation with a space (collapse afterwards to tidy up).
std::string strip_punctuation(std::string_view s);

/// Truncates to at most `max_chars` code points without splitting a UTF-8 sequence.
std::string utf8_truncate(std::string_view s, std::size_t max_chars);

/// Splits on `delim`, trims each piece, drops empties.
std::vector<std::string> split_trimmed(std::string_view s, char delim);

std::string trim(std::string_view s);

/// Keyword canonical form: lower-case + whitespace collapse.
std::string normalize_keyword(std::string_view s);

/// Reference / title key: lower-case, punctuation to spaces, whitespace
/// collapse, first 120 characters. Keys on both sides of a citation match
/// go through this same function.
std::string normalize_reference_key(std::string_view s);

/// Source-title key for quartile lookups: like a reference key but untruncated.
std::string normalize_source_title(std::string_view s);

inline constexpr std::size_t kReferenceKeyLength = 120;

}  // namespace biblionet::text
