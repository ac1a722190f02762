#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace probegen::text {

// Code-point view over UTF-8. Invalid sequences decode as U+FFFD.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

// Unicode scalar values, not bytes.
std::size_t scalar_count(std::string_view utf8);

// Replaces invalid byte sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);
bool is_valid_utf8(std::string_view bytes);

// Converts `bytes` from a named charset to UTF-8. nullopt when the charset is
// unknown to the converter.
std::optional<std::string> transcode_to_utf8(std::string_view bytes, std::string_view charset);

std::string to_lower(std::string_view utf8);
std::string fold_case(std::string_view utf8);

bool is_punctuation(char32_t cp);  // General category P*
bool is_symbol(char32_t cp);       // General category S*
bool is_letter(char32_t cp);
bool is_mark(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_emoji(char32_t cp);        // Extended_Pictographic plus emoji joiners/selectors
bool has_case(char32_t cp);

// Scripts written without spaces between words (Han, Kana, Thai, Lao, Khmer, Myanmar).
bool is_unspaced_script(char32_t cp);

std::string trim(std::string_view utf8);
std::string collapse_whitespace(std::string_view utf8);

// Lowercase, trim and collapse inner whitespace.
std::string normalize_term(std::string_view utf8);

std::vector<std::string> split_whitespace(std::string_view utf8);

bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string ascii_lower(std::string_view s);

}  // namespace probegen::text
