#ifndef SENTPLAN_TEXT_H_
#define SENTPLAN_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace sentplan {

std::string_view Trim(std::string_view text);
std::string ToLower(std::string_view text);
std::vector<std::string_view> Split(std::string_view text, char separator);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Word characters are ASCII alphanumerics, apostrophe, hyphen, currency
// signs and any non-ASCII byte (so "£20-25" and "isn't" stay whole).
bool IsWordChar(char c);

struct TextToken {
  std::string text;  // lowercased
  size_t begin = 0;  // byte offsets into the source text
  size_t end = 0;
};

// Splits into word tokens and single-character punctuation tokens. A '.'
// between two digits stays inside the word ("4.5").
std::vector<TextToken> Tokenize(std::string_view text);

// True when `needle` occurs in `haystack` at `pos` with word boundaries on
// both sides. Both arguments are expected to be lowercased.
bool MatchesWordAt(std::string_view haystack, std::string_view needle,
                   size_t pos);

// Case-insensitive whole-word search; returns byte offsets of matches.
std::vector<size_t> FindWord(std::string_view text, std::string_view word);

}  // namespace sentplan

#endif  // SENTPLAN_TEXT_H_
