#include "html_lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace fastce::internal {
namespace {

struct NamedEntity {
  std::string_view name;
  char32_t code_point;
};

// Sorted by name for binary search.
constexpr std::array<NamedEntity, 44> kNamedEntities = {{
    {"AElig", 0xC6},   {"Aacute", 0xC1}, {"Agrave", 0xC0}, {"amp", '&'},
    {"apos", '\''},    {"bull", 0x2022}, {"cent", 0xA2},   {"copy", 0xA9},
    {"deg", 0xB0},     {"eacute", 0xE9}, {"egrave", 0xE8}, {"euro", 0x20AC},
    {"gt", '>'},       {"hellip", 0x2026}, {"iexcl", 0xA1}, {"laquo", 0xAB},
    {"ldquo", 0x201C}, {"lsaquo", 0x2039}, {"lsquo", 0x2018}, {"lt", '<'},
    {"mdash", 0x2014}, {"middot", 0xB7}, {"nbsp", 0xA0},   {"ndash", 0x2013},
    {"not", 0xAC},     {"ntilde", 0xF1}, {"para", 0xB6},   {"pound", 0xA3},
    {"quot", '"'},     {"raquo", 0xBB},  {"rdquo", 0x201D}, {"reg", 0xAE},
    {"rsaquo", 0x203A}, {"rsquo", 0x2019}, {"sbquo", 0x201A}, {"sect", 0xA7},
    {"shy", 0xAD},     {"thinsp", 0x2009}, {"times", 0xD7}, {"trade", 0x2122},
    {"uuml", 0xFC},    {"yen", 0xA5},    {"zwj", 0x200D},  {"zwnj", 0x200C},
}};

void AppendCodePoint(char32_t cp, std::string* out) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsTagNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' ||
         c == '_' || c == '.';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsRawTextElement(std::string_view name) {
  return name == "script" || name == "style" || name == "xmp" ||
         name == "iframe" || name == "noembed" || name == "noframes";
}

bool IsRcdataElement(std::string_view name) {
  return name == "title" || name == "textarea";
}

}  // namespace

std::string DecodeEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const size_t amp = text.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    out.append(text.substr(i, amp - i));
    size_t p = amp + 1;
    bool decoded = false;
    if (p < text.size() && text[p] == '#') {
      ++p;
      int base = 10;
      if (p < text.size() && (text[p] == 'x' || text[p] == 'X')) {
        base = 16;
        ++p;
      }
      size_t end = p;
      while (end < text.size() &&
             (base == 16 ? std::isxdigit(static_cast<unsigned char>(text[end]))
                         : std::isdigit(static_cast<unsigned char>(text[end])))) {
        ++end;
      }
      uint32_t value = 0;
      if (end > p && end - p <= 8) {
        std::from_chars(text.data() + p, text.data() + end, value, base);
        AppendCodePoint(value, &out);
        if (end < text.size() && text[end] == ';') ++end;
        i = end;
        decoded = true;
      }
    } else {
      size_t end = p;
      while (end < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[end]))) {
        ++end;
      }
      const std::string_view name = text.substr(p, end - p);
      const auto it = std::lower_bound(
          kNamedEntities.begin(), kNamedEntities.end(), name,
          [](const NamedEntity& e, std::string_view n) { return e.name < n; });
      if (it != kNamedEntities.end() && it->name == name) {
        AppendCodePoint(it->code_point, &out);
        if (end < text.size() && text[end] == ';') ++end;
        i = end;
        decoded = true;
      }
    }
    if (!decoded) {
      out.push_back('&');
      i = amp + 1;
    }
  }
  return out;
}

std::string_view HtmlToken::Attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return v;
  }
  return {};
}

HtmlToken HtmlLexer::Next() {
  if (!raw_text_end_.empty()) return LexRawText();
  if (pos_ >= input_.size()) return HtmlToken{};

  // Text runs until a '<' that starts a tag, end tag, or markup declaration.
  size_t p = pos_;
  while (true) {
    p = input_.find('<', p);
    if (p == std::string_view::npos || p + 1 >= input_.size()) {
      p = input_.size();
      break;
    }
    const char next = input_[p + 1];
    if (std::isalpha(static_cast<unsigned char>(next)) || next == '/' ||
        next == '!' || next == '?') {
      break;
    }
    ++p;
  }
  if (p > pos_) {
    HtmlToken token;
    token.kind = HtmlToken::Kind::kText;
    token.text = DecodeEntities(input_.substr(pos_, p - pos_));
    pos_ = p;
    return token;
  }
  const char next = input_[pos_ + 1];
  if (next == '!' || next == '?') return LexMarkupDeclaration();
  return LexTag();
}

HtmlToken HtmlLexer::LexMarkupDeclaration() {
  HtmlToken token;
  if (input_.compare(pos_, 4, "<!--") == 0) {
    token.kind = HtmlToken::Kind::kComment;
    const size_t end = input_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) {
      token.text = std::string(input_.substr(pos_ + 4));
      pos_ = input_.size();
    } else {
      token.text = std::string(input_.substr(pos_ + 4, end - pos_ - 4));
      pos_ = end + 3;
    }
    return token;
  }
  const size_t end = input_.find('>', pos_);
  token.kind = (input_.size() - pos_ >= 9 &&
                ToLower(input_.substr(pos_ + 2, 7)) == "doctype")
                   ? HtmlToken::Kind::kDoctype
                   : HtmlToken::Kind::kComment;
  if (end == std::string_view::npos) {
    pos_ = input_.size();
  } else {
    token.text = std::string(input_.substr(pos_ + 2, end - pos_ - 2));
    pos_ = end + 1;
  }
  return token;
}

HtmlToken HtmlLexer::LexTag() {
  HtmlToken token;
  size_t p = pos_ + 1;
  const bool is_end = input_[p] == '/';
  if (is_end) ++p;
  if (p >= input_.size() ||
      !std::isalpha(static_cast<unsigned char>(input_[p]))) {
    // "</>" or "</ " : bogus end tag, skipped like a comment.
    const size_t end = input_.find('>', p);
    pos_ = end == std::string_view::npos ? input_.size() : end + 1;
    token.kind = HtmlToken::Kind::kComment;
    return token;
  }
  size_t name_end = p;
  while (name_end < input_.size() && IsTagNameChar(input_[name_end])) ++name_end;
  token.kind = is_end ? HtmlToken::Kind::kEndTag : HtmlToken::Kind::kStartTag;
  token.name = ToLower(input_.substr(p, name_end - p));
  p = name_end;

  // Attributes.
  while (p < input_.size()) {
    while (p < input_.size() && IsSpace(input_[p])) ++p;
    if (p >= input_.size()) break;
    if (input_[p] == '>') {
      ++p;
      break;
    }
    if (input_[p] == '/') {
      if (p + 1 < input_.size() && input_[p + 1] == '>') {
        token.self_closing = true;
        p += 2;
        break;
      }
      ++p;
      continue;
    }
    size_t key_end = p;
    while (key_end < input_.size() && !IsSpace(input_[key_end]) &&
           input_[key_end] != '=' && input_[key_end] != '>' &&
           !(input_[key_end] == '/' && key_end + 1 < input_.size() &&
             input_[key_end + 1] == '>')) {
      ++key_end;
    }
    if (key_end == p) ++key_end;  // stray '=' or similar
    std::string key = ToLower(input_.substr(p, key_end - p));
    p = key_end;
    while (p < input_.size() && IsSpace(input_[p])) ++p;
    std::string value;
    if (p < input_.size() && input_[p] == '=') {
      ++p;
      while (p < input_.size() && IsSpace(input_[p])) ++p;
      if (p < input_.size() && (input_[p] == '"' || input_[p] == '\'')) {
        const char quote = input_[p];
        const size_t close = input_.find(quote, p + 1);
        const size_t stop = close == std::string_view::npos ? input_.size() : close;
        value = DecodeEntities(input_.substr(p + 1, stop - p - 1));
        p = close == std::string_view::npos ? input_.size() : close + 1;
      } else {
        size_t stop = p;
        while (stop < input_.size() && !IsSpace(input_[stop]) &&
               input_[stop] != '>') {
          ++stop;
        }
        value = DecodeEntities(input_.substr(p, stop - p));
        p = stop;
      }
    }
    if (!is_end) token.attributes.emplace_back(std::move(key), std::move(value));
  }
  pos_ = p;

  if (!is_end && !token.self_closing) {
    if (IsRawTextElement(token.name)) {
      raw_text_end_ = token.name;
      raw_text_decodes_ = false;
    } else if (IsRcdataElement(token.name)) {
      raw_text_end_ = token.name;
      raw_text_decodes_ = true;
    }
  }
  return token;
}

HtmlToken HtmlLexer::LexRawText() {
  // Find "</name" followed by a delimiter, case-insensitively.
  size_t p = pos_;
  size_t end = input_.size();
  while ((p = input_.find("</", p)) != std::string_view::npos) {
    const size_t name_start = p + 2;
    const size_t name_end = name_start + raw_text_end_.size();
    if (name_end <= input_.size() &&
        ToLower(input_.substr(name_start, raw_text_end_.size())) ==
            raw_text_end_ &&
        (name_end == input_.size() || IsSpace(input_[name_end]) ||
         input_[name_end] == '>' || input_[name_end] == '/')) {
      end = p;
      break;
    }
    p = name_start;
  }
  HtmlToken token;
  token.kind = HtmlToken::Kind::kText;
  const auto raw = input_.substr(pos_, end - pos_);
  token.text = raw_text_decodes_ ? DecodeEntities(raw) : std::string(raw);
  pos_ = end;
  raw_text_end_.clear();
  if (token.text.empty()) return Next();
  return token;
}

}  // namespace fastce::internal
