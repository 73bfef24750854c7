#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace codemix::utf8 {

/// One decoded code point and the number of bytes it occupied.
struct Decoded {
  char32_t code_point;
  std::size_t length;
};

/// Decodes the code point starting at text[pos]. Returns nullopt on an
/// invalid, overlong, surrogate or truncated sequence.
std::optional<Decoded> decode_at(std::string_view text, std::size_t pos);

bool is_valid(std::string_view text);

/// Number of code points; invalid bytes count as one each.
std::size_t length(std::string_view text);

void append(std::string& out, char32_t code_point);

constexpr bool is_malayalam(char32_t cp) { return cp >= 0x0D00 && cp <= 0x0D7F; }
constexpr bool is_ascii_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

}  // namespace codemix::utf8
