#include "agentomit/tokenizer.hpp"

namespace agentomit {

namespace {

inline bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Length in bytes of the UTF-8 code point starting at s[i].
inline std::size_t cp_len(std::string_view s, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  std::size_t n = 1;
  if ((c & 0xe0) == 0xc0) n = 2;
  else if ((c & 0xf0) == 0xe0) n = 3;
  else if ((c & 0xf8) == 0xf0) n = 4;
  if (i + n > s.size()) n = 1;
  return n;
}

// Shared scanner; emit is called with each token's [begin, end) range.
template <typename Emit>
void scan(std::string_view text, Emit&& emit) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '<') {
      std::size_t j = i + 1;
      while (j < n && !is_space(static_cast<unsigned char>(text[j])) && text[j] != '>') ++j;
      if (j < n && text[j] == '>') {
        emit(i, j + 1);
        i = j + 1;
      } else {
        // Unterminated tag prefix: one token up to the whitespace/end, so
        // that completing the tag later can only merge, never split.
        emit(i, j);
        i = j;
      }
      continue;
    }
    if (is_alnum(c)) {
      std::size_t j = i + 1;
      while (j < n && is_alnum(static_cast<unsigned char>(text[j]))) ++j;
      emit(i, j);
      i = j;
      continue;
    }
    std::size_t len = cp_len(text, i);
    emit(i, i + len);
    i += len;
  }
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  scan(text, [&](std::size_t b, std::size_t e) { out.tokens.emplace_back(text.substr(b, e - b)); });
  return out;
}

std::size_t token_count(std::string_view text) {
  std::size_t count = 0;
  scan(text, [&](std::size_t, std::size_t) { ++count; });
  return count;
}

}  // namespace agentomit
