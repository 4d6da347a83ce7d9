#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace agentomit {

/// Deterministic whitespace-and-tag segmentation. Every efficiency metric in
/// the project counts tokens through this one function.
///
/// Rules, applied left to right:
///  - whitespace separates tokens and never appears in one;
///  - at '<', the token runs to the first '>' if one occurs before any
///    whitespace (a complete tag like `<tool_response_3>` is one token),
///    otherwise to the next whitespace or end of input;
///  - a maximal run of ASCII alphanumerics is one token;
///  - any other character (one UTF-8 code point) is a token by itself.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::size_t count() const { return tokens.size(); }
};

TokenSequence tokenize(std::string_view text);

/// Token count without materializing the token strings.
std::size_t token_count(std::string_view text);

}  // namespace agentomit
