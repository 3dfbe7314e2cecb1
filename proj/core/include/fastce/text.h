#ifndef FASTCE_TEXT_H_
#define FASTCE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace fastce {

struct TokenizerOptions {
  bool case_fold = true;

  bool operator==(const TokenizerOptions&) const = default;
};

// Replaces every run of whitespace (ASCII whitespace and U+00A0) with a
// single space and trims both ends.
std::string CollapseWhitespace(std::string_view text);

// Joins the non-empty pieces with single spaces, then collapses whitespace.
std::string JoinText(const std::vector<std::string>& pieces);

// Splits UTF-8 text into terms. A term is a maximal run of Unicode letters,
// digits and combining marks; everything else separates terms. Invalid UTF-8
// sequences act as separators.
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerOptions& options = {});

// Space-joined token sequence; used to compare block texts independently of
// punctuation and markup spacing.
std::string TokenKey(std::string_view text,
                     const TokenizerOptions& options = {});

bool IsValidUtf8(std::string_view bytes);

}  // namespace fastce

#endif  // FASTCE_TEXT_H_
