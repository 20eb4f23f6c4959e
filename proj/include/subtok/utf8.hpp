#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subtok/error.hpp"

namespace subtok::utf8 {

// Decodes a UTF-8 string into code points. Throws FormatError on malformed
// input (truncated sequences, overlong encodings, surrogates, > U+10FFFF).
std::vector<char32_t> decode(std::string_view text);

// Appends the UTF-8 encoding of cp to out.
void append(std::string& out, char32_t cp);

// Encodes a code point sequence back to UTF-8.
std::string encode(const std::vector<char32_t>& cps);
std::string encode(char32_t cp);

// Number of code points in a valid UTF-8 string.
std::size_t length(std::string_view text);

}  // namespace subtok::utf8
