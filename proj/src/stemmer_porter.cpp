#include <algorithm>
#include <array>

#include "doitk/stemmer.hpp"
#include "doitk/utf8.hpp"

namespace doitk::stem {

std::optional<Language> parse_language(std::string_view name) {
  if (name == "english" || name == "en") return Language::english;
  if (name == "italian" || name == "it") return Language::italian;
  return std::nullopt;
}

std::string_view language_name(Language lang) {
  return lang == Language::english ? "english" : "italian";
}

std::string stem(std::string_view word, Language lang) {
  return lang == Language::english ? porter(word) : italian(word);
}

namespace {

struct Suffix {
  std::u32string_view text;
  std::u32string_view replacement;
};

bool is_vowel(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
}

// Vowels plus w, x and the marked consonant Y.
bool is_vowel_wxy(char32_t c) {
  return is_vowel(c) || c == U'w' || c == U'x' || c == U'Y';
}

bool ends_with(const std::u32string& s, std::u32string_view suf) {
  return s.size() >= suf.size() && std::u32string_view(s).substr(s.size() - suf.size()) == suf;
}

// Longest entry of `table` that ends `s`.
template <std::size_t N>
const Suffix* longest_suffix(const std::u32string& s, const std::array<Suffix, N>& table) {
  const Suffix* best = nullptr;
  for (const auto& e : table) {
    if (ends_with(s, e.text) && (!best || e.text.size() > best->text.size())) best = &e;
  }
  return best;
}

// Short syllable ending at `end` (exclusive): non-vowel-WXY, vowel, non-vowel
// read right to left.
bool short_syllable(const std::u32string& s, std::size_t end) {
  if (end < 3) return false;
  return !is_vowel_wxy(s[end - 1]) && is_vowel(s[end - 2]) && !is_vowel(s[end - 3]);
}

bool has_vowel(const std::u32string& s, std::size_t end) {
  for (std::size_t i = 0; i < end; ++i)
    if (is_vowel(s[i])) return true;
  return false;
}

constexpr std::array<Suffix, 20> kStep2{{
    {U"anci", U"ance"},   {U"enci", U"ence"},   {U"abli", U"able"},  {U"eli", U"e"},
    {U"alli", U"al"},     {U"ousli", U"ous"},   {U"entli", U"ent"},  {U"aliti", U"al"},
    {U"biliti", U"ble"},  {U"iviti", U"ive"},   {U"tional", U"tion"}, {U"ational", U"ate"},
    {U"alism", U"al"},    {U"ation", U"ate"},   {U"ization", U"ize"}, {U"izer", U"ize"},
    {U"ator", U"ate"},    {U"iveness", U"ive"}, {U"fulness", U"ful"}, {U"ousness", U"ous"},
}};

constexpr std::array<Suffix, 7> kStep3{{
    {U"icate", U"ic"}, {U"ative", U""}, {U"alize", U"al"}, {U"iciti", U"ic"},
    {U"ical", U"ic"},  {U"ful", U""},   {U"ness", U""},
}};

constexpr std::array<Suffix, 19> kStep4{{
    {U"ic", U""},  {U"ance", U""}, {U"ence", U""}, {U"able", U""}, {U"ible", U""},
    {U"ate", U""}, {U"ive", U""},  {U"ize", U""},  {U"iti", U""},  {U"al", U""},
    {U"ism", U""}, {U"ion", U""},  {U"er", U""},   {U"ous", U""},  {U"ant", U""},
    {U"ent", U""}, {U"ment", U""}, {U"ement", U""}, {U"ou", U""},
}};

void replace_tail(std::u32string& s, std::size_t len, std::u32string_view with) {
  s.resize(s.size() - len);
  s.append(with);
}

}  // namespace

std::string porter(std::string_view word) {
  std::u32string s = utf8::decode(word);
  bool y_found = false;
  if (!s.empty() && s[0] == U'y') {
    s[0] = U'Y';
    y_found = true;
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == U'y' && is_vowel(s[i - 1])) {
      s[i] = U'Y';
      y_found = true;
    }
  }

  // R1 and R2: after the first non-vowel following a vowel, applied twice.
  const std::size_t len0 = s.size();
  std::size_t p1 = len0, p2 = len0;
  {
    std::size_t i = 0;
    while (i < len0 && !is_vowel(s[i])) ++i;
    while (i < len0 && is_vowel(s[i])) ++i;
    if (i < len0) {
      p1 = i + 1;
      i = p1;
      while (i < len0 && !is_vowel(s[i])) ++i;
      while (i < len0 && is_vowel(s[i])) ++i;
      if (i < len0) p2 = i + 1;
    }
  }
  auto in_r1 = [&](std::size_t pos) { return pos >= p1; };
  auto in_r2 = [&](std::size_t pos) { return pos >= p2; };

  // Step 1a
  if (ends_with(s, U"sses")) {
    replace_tail(s, 4, U"ss");
  } else if (ends_with(s, U"ies")) {
    replace_tail(s, 3, U"i");
  } else if (ends_with(s, U"ss")) {
    // unchanged
  } else if (ends_with(s, U"s")) {
    s.pop_back();
  }

  // Step 1b
  if (ends_with(s, U"eed")) {
    if (in_r1(s.size() - 3)) replace_tail(s, 3, U"ee");
  } else {
    std::size_t suf = ends_with(s, U"ed") ? 2 : ends_with(s, U"ing") ? 3 : 0;
    if (suf != 0 && has_vowel(s, s.size() - suf)) {
      s.resize(s.size() - suf);
      if (ends_with(s, U"at") || ends_with(s, U"bl") || ends_with(s, U"iz")) {
        s.push_back(U'e');
      } else if (s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2] &&
                 std::u32string_view(U"bdfgmnprt").find(s.back()) != std::u32string_view::npos) {
        s.pop_back();
      } else if (s.size() == p1 && short_syllable(s, s.size())) {
        s.push_back(U'e');
      }
    }
  }

  // Step 1c
  if (!s.empty() && (s.back() == U'y' || s.back() == U'Y') && has_vowel(s, s.size() - 1)) {
    s.back() = U'i';
  }

  // Step 2
  if (const Suffix* e = longest_suffix(s, kStep2); e && in_r1(s.size() - e->text.size())) {
    replace_tail(s, e->text.size(), e->replacement);
  }

  // Step 3
  if (const Suffix* e = longest_suffix(s, kStep3); e && in_r1(s.size() - e->text.size())) {
    replace_tail(s, e->text.size(), e->replacement);
  }

  // Step 4
  if (const Suffix* e = longest_suffix(s, kStep4); e) {
    std::size_t start = s.size() - e->text.size();
    if (in_r2(start)) {
      if (e->text == U"ion") {
        if (start > 0 && (s[start - 1] == U's' || s[start - 1] == U't')) s.resize(start);
      } else {
        s.resize(start);
      }
    }
  }

  // Step 5a
  if (!s.empty() && s.back() == U'e') {
    std::size_t pos = s.size() - 1;
    if (in_r2(pos) || (in_r1(pos) && !short_syllable(s, pos))) s.pop_back();
  }

  // Step 5b
  if (s.size() >= 2 && s.back() == U'l' && in_r2(s.size() - 1) && s[s.size() - 2] == U'l') {
    s.pop_back();
  }

  if (y_found) std::replace(s.begin(), s.end(), U'Y', U'y');
  return utf8::encode(s);
}

}  // namespace doitk::stem
