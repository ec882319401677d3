#pragma once

#include <string>
#include <string_view>

namespace doitk::utf8 {

/// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

char32_t to_lower(char32_t c);
bool is_space(char32_t c);
/// Letters and digits: ASCII, Latin-1/Latin Extended letters and other
/// scripts above U+0250 except punctuation and symbol blocks.
bool is_alnum(char32_t c);

}  // namespace doitk::utf8
