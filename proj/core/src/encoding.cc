#include "fastce/encoding.h"

#include <unicode/ucnv.h>
#include <unicode/ustring.h>
#include <unicode/utypes.h>

#include <algorithm>
#include <cctype>

#include "fastce/error.h"
#include "fastce/text.h"
#include "html_lexer.h"

namespace fastce {
namespace {

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string CharsetFromContentType(std::string_view content) {
  const std::string lower = ToLower(content);
  const size_t pos = lower.find("charset");
  if (pos == std::string::npos) return {};
  size_t p = pos + 7;
  while (p < lower.size() && (lower[p] == ' ' || lower[p] == '=')) ++p;
  if (p < lower.size() && (lower[p] == '"' || lower[p] == '\'')) ++p;
  size_t end = p;
  while (end < lower.size() && lower[end] != ';' && lower[end] != '"' &&
         lower[end] != '\'' && lower[end] != ' ') {
    ++end;
  }
  return lower.substr(p, end - p);
}

std::string Convert(std::string_view bytes, const char* charset) {
  UErrorCode status = U_ZERO_ERROR;
  UConverter* converter = ucnv_open(charset, &status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kEncoding,
                std::string("unsupported charset '") + charset + "'");
  }
  ucnv_setToUCallBack(converter, UCNV_TO_U_CALLBACK_STOP, nullptr, nullptr,
                      nullptr, &status);
  std::u16string utf16(bytes.size() * 2 + 2, u'\0');
  const int32_t units = ucnv_toUChars(
      converter, utf16.data(), static_cast<int32_t>(utf16.size()),
      bytes.data(), static_cast<int32_t>(bytes.size()), &status);
  ucnv_close(converter);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kEncoding, std::string("bytes are not valid ") +
                                          charset + ": " + u_errorName(status));
  }
  std::string out(static_cast<size_t>(units) * 3 + 1, '\0');
  int32_t length = 0;
  u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &length,
              utf16.data(), units, &status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kEncoding,
                std::string("UTF-8 conversion failed: ") + u_errorName(status));
  }
  out.resize(length);
  return out;
}

}  // namespace

std::string DeclaredCharset(std::string_view html_bytes) {
  internal::HtmlLexer lexer(html_bytes.substr(0, 8192));
  for (auto token = lexer.Next(); token.kind != internal::HtmlToken::Kind::kEof;
       token = lexer.Next()) {
    if (token.kind != internal::HtmlToken::Kind::kStartTag) continue;
    if (token.name == "body") break;
    if (token.name != "meta") continue;
    if (auto charset = token.Attribute("charset"); !charset.empty()) {
      return ToLower(charset);
    }
    if (ToLower(token.Attribute("http-equiv")) == "content-type") {
      auto charset = CharsetFromContentType(token.Attribute("content"));
      if (!charset.empty()) return charset;
    }
  }
  return {};
}

std::string DecodeToUtf8(std::string_view html_bytes) {
  if (html_bytes.starts_with("\xEF\xBB\xBF")) html_bytes.remove_prefix(3);
  if (IsValidUtf8(html_bytes)) return std::string(html_bytes);
  if (html_bytes.starts_with("\xFF\xFE")) {
    return Convert(html_bytes.substr(2), "UTF-16LE");
  }
  if (html_bytes.starts_with("\xFE\xFF")) {
    return Convert(html_bytes.substr(2), "UTF-16BE");
  }
  const std::string charset = DeclaredCharset(html_bytes);
  if (charset.empty() || charset == "utf-8" || charset == "utf8") {
    throw Error(ErrorCode::kEncoding,
                "page is not valid UTF-8 and declares no other charset");
  }
  return Convert(html_bytes, charset.c_str());
}

}  // namespace fastce
