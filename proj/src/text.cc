#include "sentplan/text.h"

#include <cctype>

namespace sentplan {

std::string_view Trim(std::string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string_view> Split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool IsWordChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '\'' || c == '-' || c == '$' ||
         c == '\xA3';
}

std::vector<TextToken> Tokenize(std::string_view text) {
  std::vector<TextToken> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!IsWordChar(c)) {
      tokens.push_back({std::string(1, c), i, i + 1});
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size()) {
      if (IsWordChar(text[i])) {
        ++i;
      } else if (text[i] == '.' && i > start && i + 1 < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                 std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
      } else {
        break;
      }
    }
    // Trailing apostrophes and hyphens are punctuation, not word material.
    size_t end = i;
    while (end > start + 1 && (text[end - 1] == '\'' || text[end - 1] == '-')) {
      --end;
    }
    tokens.push_back({ToLower(text.substr(start, end - start)), start, end});
    for (size_t k = end; k < i; ++k) {
      tokens.push_back({std::string(1, text[k]), k, k + 1});
    }
  }
  return tokens;
}

bool MatchesWordAt(std::string_view haystack, std::string_view needle,
                   size_t pos) {
  if (needle.empty() || pos + needle.size() > haystack.size()) return false;
  if (haystack.compare(pos, needle.size(), needle) != 0) return false;
  if (pos > 0 && IsWordChar(haystack[pos - 1]) && IsWordChar(needle.front())) {
    return false;
  }
  size_t end = pos + needle.size();
  if (end < haystack.size() && IsWordChar(haystack[end]) &&
      IsWordChar(needle.back())) {
    return false;
  }
  return true;
}

std::vector<size_t> FindWord(std::string_view text, std::string_view word) {
  std::string hay = ToLower(text);
  std::string needle = ToLower(word);
  std::vector<size_t> hits;
  if (needle.empty()) return hits;
  size_t pos = hay.find(needle);
  while (pos != std::string::npos) {
    if (MatchesWordAt(hay, needle, pos)) hits.push_back(pos);
    pos = hay.find(needle, pos + 1);
  }
  return hits;
}

}  // namespace sentplan
