#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace joinscout::text {

// Decodes one UTF-8 code point starting at s[i]. Advances i past the
// sequence. Malformed input (stray or truncated bytes, overlong forms,
// surrogates, values past U+10FFFF) decodes as U+FFFD, advancing one byte.
uint32_t decode_utf8(std::string_view s, size_t& i);

void append_utf8(std::string& out, uint32_t cp);

// Number of code points (malformed bytes count as one each).
size_t codepoint_count(std::string_view s);

// Lowercase, strip accents (canonical decomposition of the common Latin
// precomposed letters, then dropping combining marks U+0300..U+036F) and
// drop special symbols. Letters, digits and whitespace survive; non-Latin
// letters pass through unchanged. Idempotent.
std::string preprocess_value(std::string_view raw);

std::vector<std::string> preprocess_values(const std::vector<std::string>& raw);

// Whitespace-separated tokens; empty tokens are skipped.
std::vector<std::string_view> split_words(std::string_view value);
size_t word_count(std::string_view value);

// American Soundex. Keeps the first letter (upper-cased), maps consonants
// to classes 1..6, collapses adjacent duplicates (h/w transparent, vowels
// separating) and pads with zeros to 4 characters. Characters outside
// ASCII letters are ignored; a word with no letters yields "".
std::string soundex(std::string_view word);

size_t levenshtein(std::string_view a, std::string_view b);

// levenshtein(a,b) / max(|a|,|b|); 0 when both are empty.
double name_distance(std::string_view a, std::string_view b);

std::string ascii_lower(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace joinscout::text
