#include "ietk/utf8.hpp"

namespace ietk::utf8 {

std::size_t scalar_bytes(std::string_view s, std::size_t i) {
  const unsigned char b = static_cast<unsigned char>(s[i]);
  std::size_t need;
  if (b < 0x80) return 1;
  if ((b >> 5) == 0x06) need = 2;
  else if ((b >> 4) == 0x0e) need = 3;
  else if ((b >> 3) == 0x1e) need = 4;
  else return 1;  // stray continuation or invalid lead byte
  if (i + need > s.size()) return 1;
  for (std::size_t k = 1; k < need; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x02) return 1;
  }
  return need;
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += scalar_bytes(s, i)) ++n;
  return n;
}

std::size_t byte_offset(std::string_view s, std::size_t scalar) {
  std::size_t i = 0;
  while (scalar > 0 && i < s.size()) {
    i += scalar_bytes(s, i);
    --scalar;
  }
  return i;
}

std::string substr(std::string_view s, std::size_t start, std::size_t end) {
  if (end <= start) return {};
  const std::size_t b0 = byte_offset(s, start);
  std::size_t b1 = b0;
  for (std::size_t n = end - start; n > 0 && b1 < s.size(); --n) {
    b1 += scalar_bytes(s, b1);
  }
  return std::string(s.substr(b0, b1 - b0));
}

}  // namespace ietk::utf8
