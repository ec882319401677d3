#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace doitk::stem {

enum class Language { english, italian };

std::optional<Language> parse_language(std::string_view name);
std::string_view language_name(Language lang);

/// Original Porter algorithm (Snowball "porter" formulation). Input must be
/// lowercase UTF-8.
std::string porter(std::string_view word);

/// Snowball Italian stemmer. Input must be lowercase UTF-8.
std::string italian(std::string_view word);

std::string stem(std::string_view word, Language lang);

}  // namespace doitk::stem
