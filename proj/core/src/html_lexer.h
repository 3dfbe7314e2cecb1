#ifndef FASTCE_SRC_HTML_LEXER_H_
#define FASTCE_SRC_HTML_LEXER_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fastce::internal {

struct HtmlToken {
  enum class Kind { kStartTag, kEndTag, kText, kComment, kDoctype, kEof };

  Kind kind = Kind::kEof;
  // Lowercased tag name for tags; decoded text for kText.
  std::string name;
  std::string text;
  std::vector<std::pair<std::string, std::string>> attributes;
  bool self_closing = false;

  std::string_view Attribute(std::string_view key) const;
};

// Pull tokenizer over an HTML document. Follows the HTML tokenizer's data,
// tag, raw-text and RCDATA states closely enough for block segmentation;
// character references are decoded in text and attribute values.
class HtmlLexer {
 public:
  explicit HtmlLexer(std::string_view input) : input_(input) {}

  HtmlToken Next();

 private:
  HtmlToken LexTag();
  HtmlToken LexMarkupDeclaration();
  HtmlToken LexRawText();

  std::string_view input_;
  size_t pos_ = 0;
  // Set after a start tag whose content is raw text (script, style) or
  // RCDATA (title, textarea); holds the tag name that ends it.
  std::string raw_text_end_;
  bool raw_text_decodes_ = false;
};

// Decodes named and numeric character references.
std::string DecodeEntities(std::string_view text);

}  // namespace fastce::internal

#endif  // FASTCE_SRC_HTML_LEXER_H_
