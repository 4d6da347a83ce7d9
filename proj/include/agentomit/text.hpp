#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace agentomit {

std::set<std::string> token_set(std::string_view text);
std::map<std::string, int> token_multiset(std::string_view text);

/// Jaccard similarity of the token sets of two texts. Empty-vs-anything is 0.
double token_jaccard(std::string_view a, std::string_view b);
double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Jaccard distance between token multisets (1 - sum min / sum max).
/// A metric; identical texts give 0, token-disjoint texts give 1.
double multiset_jaccard_distance(const std::map<std::string, int>& a,
                                 const std::map<std::string, int>& b);

/// Lowercased alphanumeric tokens of length >= 2 that are not pure digits.
/// Used for "was this information referenced later" style checks, where
/// quantities and punctuation would create spurious overlap.
std::set<std::string> content_tokens(std::string_view text);

/// Case-folded, whitespace-collapsed, trimmed.
std::string normalize_answer(std::string_view text);

/// True when needle's token sequence appears contiguously in haystack's
/// token sequence, case-folded. Entity names span several tokens.
bool contains_token_phrase(std::string_view haystack, std::string_view needle);

}  // namespace agentomit
