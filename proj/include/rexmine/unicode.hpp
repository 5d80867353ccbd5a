#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rexmine::uni {

/// Decodes strict UTF-8 into Unicode scalar values. Rejects overlong forms,
/// surrogates, values past U+10FFFF and truncated sequences.
std::u32string decode_utf8(std::string_view bytes);  // throws EncodingError

std::optional<std::u32string> try_decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view scalars);

void append_utf8(std::string& out, char32_t scalar);

}  // namespace rexmine::uni
