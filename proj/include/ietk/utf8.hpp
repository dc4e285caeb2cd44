#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Offset helpers that count Unicode scalar values, not bytes. All span
// offsets in this toolkit are scalar-value offsets over UTF-8 text.
// Invalid byte sequences are total: each invalid byte counts as one scalar.
namespace ietk::utf8 {

// Byte length of the encoded scalar starting at s[i] (1..4).
std::size_t scalar_bytes(std::string_view s, std::size_t i);

// Number of scalar values in s.
std::size_t length(std::string_view s);

// Byte offset of scalar index `scalar`; s.size() when scalar >= length(s).
std::size_t byte_offset(std::string_view s, std::size_t scalar);

// Substring covering scalar offsets [start, end), clamped to the string.
std::string substr(std::string_view s, std::size_t start, std::size_t end);

}  // namespace ietk::utf8
