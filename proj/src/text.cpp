#include "agentomit/text.hpp"

#include <algorithm>
#include <cctype>

#include "agentomit/tokenizer.hpp"

namespace agentomit {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::set<std::string> token_set(std::string_view text) {
  std::set<std::string> out;
  for (auto& t : tokenize(text).tokens) out.insert(std::move(t));
  return out;
}

std::map<std::string, int> token_multiset(std::string_view text) {
  std::map<std::string, int> out;
  for (auto& t : tokenize(text).tokens) ++out[t];
  return out;
}

double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double token_jaccard(std::string_view a, std::string_view b) {
  return token_jaccard(token_set(a), token_set(b));
}

double multiset_jaccard_distance(const std::map<std::string, int>& a,
                                 const std::map<std::string, int>& b) {
  long long num = 0;
  long long den = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      den += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      den += ib->second;
      ++ib;
    } else {
      num += std::min(ia->second, ib->second);
      den += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  if (den == 0) return 0.0;  // both empty: identical
  return 1.0 - static_cast<double>(num) / static_cast<double>(den);
}

std::set<std::string> content_tokens(std::string_view text) {
  std::set<std::string> out;
  for (auto& t : tokenize(text).tokens) {
    if (t.size() < 2) continue;
    bool alpha = false;
    bool ok = true;
    for (unsigned char c : t) {
      if (std::isalpha(c)) alpha = true;
      else if (!std::isdigit(c)) { ok = false; break; }
    }
    if (ok && alpha) out.insert(lower(std::move(t)));
  }
  return out;
}

std::string normalize_answer(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

bool contains_token_phrase(std::string_view haystack, std::string_view needle) {
  auto h = tokenize(haystack).tokens;
  auto n = tokenize(needle).tokens;
  if (n.empty()) return true;
  if (h.size() < n.size()) return false;
  for (auto& t : h) t = lower(std::move(t));
  for (auto& t : n) t = lower(std::move(t));
  for (std::size_t i = 0; i + n.size() <= h.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (h[i + j] != n[j]) { match = false; break; }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace agentomit
