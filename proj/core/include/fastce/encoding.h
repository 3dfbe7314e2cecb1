#ifndef FASTCE_ENCODING_H_
#define FASTCE_ENCODING_H_

#include <string>
#include <string_view>

namespace fastce {

// Returns the charset declared by a <meta charset> or
// <meta http-equiv="Content-Type" content="...; charset=..."> element, or an
// empty string.
std::string DeclaredCharset(std::string_view html_bytes);

// Decodes page bytes to UTF-8. Valid UTF-8 (with or without BOM) passes
// through; otherwise a UTF-16 BOM or the declared charset is honored. Throws
// kEncoding when neither applies or conversion fails.
std::string DecodeToUtf8(std::string_view html_bytes);

}  // namespace fastce

#endif  // FASTCE_ENCODING_H_
