#include <algorithm>
#include <vector>

#include "doitk/stemmer.hpp"
#include "doitk/utf8.hpp"

namespace doitk::stem {

namespace {

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'à': case U'è': case U'ì': case U'ò': case U'ù':
      return true;
    default:
      return false;
  }
}

bool is_aeio(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o':
    case U'à': case U'è': case U'ì': case U'ò':
      return true;
    default:
      return false;
  }
}

bool ends_with(const std::u32string& s, std::u32string_view suf) {
  return s.size() >= suf.size() && std::u32string_view(s).substr(s.size() - suf.size()) == suf;
}

bool ends_with_at(const std::u32string& s, std::size_t end, std::u32string_view suf) {
  return end >= suf.size() && std::u32string_view(s).substr(end - suf.size(), suf.size()) == suf;
}

// Longest suffix of `s` from `list` whose start is at or after `floor`.
std::u32string_view longest(const std::u32string& s, const std::vector<std::u32string_view>& list,
                            std::size_t floor = 0) {
  std::u32string_view best;
  for (auto suf : list) {
    if (suf.size() > best.size() && ends_with(s, suf) && s.size() - suf.size() >= floor) best = suf;
  }
  return best;
}

const std::vector<std::u32string_view> kPronouns{
    U"la", U"cela", U"gliela", U"mela", U"tela", U"vela", U"le", U"cele", U"gliele",
    U"mele", U"tele", U"vele", U"ne", U"cene", U"gliene", U"mene", U"sene", U"tene",
    U"vene", U"ci", U"li", U"celi", U"glieli", U"meli", U"teli", U"veli", U"gli",
    U"mi", U"si", U"ti", U"vi", U"lo", U"celo", U"glielo", U"melo", U"telo", U"velo"};

// Standard suffixes grouped by their action.
enum class Action { del_r2, del_r2_ic, log, u, ente, del_rv, amente, ita, iv };

struct StdSuffix {
  std::u32string_view text;
  Action action;
};

const std::vector<StdSuffix> kStandard{
    {U"ica", Action::del_r2},     {U"logia", Action::log},       {U"osa", Action::del_r2},
    {U"ista", Action::del_r2},    {U"iva", Action::iv},          {U"anza", Action::del_r2},
    {U"enza", Action::ente},      {U"ice", Action::del_r2},      {U"atrice", Action::del_r2},
    {U"iche", Action::del_r2},    {U"logie", Action::log},       {U"abile", Action::del_r2},
    {U"ibile", Action::del_r2},   {U"usione", Action::u},        {U"azione", Action::del_r2_ic},
    {U"uzione", Action::u},       {U"atore", Action::del_r2_ic}, {U"ose", Action::del_r2},
    {U"ante", Action::del_r2},    {U"mente", Action::del_r2},    {U"amente", Action::amente},
    {U"iste", Action::del_r2},    {U"ive", Action::iv},          {U"anze", Action::del_r2},
    {U"enze", Action::ente},      {U"ici", Action::del_r2},      {U"atrici", Action::del_r2},
    {U"ichi", Action::del_r2},    {U"abili", Action::del_r2},    {U"ibili", Action::del_r2},
    {U"ismi", Action::del_r2},    {U"usioni", Action::u},        {U"azioni", Action::del_r2_ic},
    {U"uzioni", Action::u},       {U"atori", Action::del_r2_ic}, {U"osi", Action::del_r2},
    {U"anti", Action::del_r2},    {U"amenti", Action::del_rv},   {U"imenti", Action::del_rv},
    {U"isti", Action::del_r2},    {U"ivi", Action::iv},          {U"ico", Action::del_r2},
    {U"ismo", Action::del_r2},    {U"oso", Action::del_r2},      {U"amento", Action::del_rv},
    {U"imento", Action::del_rv},  {U"ivo", Action::iv},          {U"ità", Action::ita},
    {U"istà", Action::del_r2},    {U"istè", Action::del_r2},     {U"istì", Action::del_r2}};

const std::vector<std::u32string_view> kVerb{
    U"isca", U"enda", U"ata", U"ita", U"uta", U"ava", U"eva", U"iva", U"erebbe",
    U"irebbe", U"isce", U"ende", U"are", U"ere", U"ire", U"asse", U"ate", U"avate",
    U"evate", U"ivate", U"ete", U"erete", U"irete", U"ite", U"ereste", U"ireste",
    U"ute", U"erai", U"irai", U"isci", U"endi", U"erei", U"irei", U"assi", U"ati",
    U"iti", U"eresti", U"iresti", U"uti", U"avi", U"evi", U"ivi", U"isco", U"ando",
    U"endo", U"Yamo", U"iamo", U"avamo", U"evamo", U"ivamo", U"eremo", U"iremo",
    U"assimo", U"ammo", U"emmo", U"eremmo", U"iremmo", U"immo", U"ano", U"iscano",
    U"avano", U"evano", U"ivano", U"eranno", U"iranno", U"ono", U"iscono", U"arono",
    U"erono", U"irono", U"erebbero", U"irebbero", U"assero", U"essero", U"issero",
    U"ato", U"ito", U"uto", U"avo", U"evo", U"ivo", U"ar", U"ir", U"erà", U"irà",
    U"erò", U"irò"};

class ItalianStemmer {
 public:
  explicit ItalianStemmer(std::u32string word) : s_(std::move(word)) {}

  std::u32string run() {
    prelude();
    mark_regions();
    attached_pronoun();
    if (!standard_suffix()) verb_suffix();
    vowel_suffix();
    for (auto& c : s_) {
      if (c == U'I') c = U'i';
      else if (c == U'U') c = U'u';
    }
    return s_;
  }

 private:
  void prelude() {
    std::u32string t;
    t.reserve(s_.size());
    for (std::size_t i = 0; i < s_.size(); ++i) {
      char32_t c = s_[i];
      switch (c) {
        case U'á': t.push_back(U'à'); break;
        case U'é': t.push_back(U'è'); break;
        case U'í': t.push_back(U'ì'); break;
        case U'ó': t.push_back(U'ò'); break;
        case U'ú': t.push_back(U'ù'); break;
        case U'q':
          t.push_back(U'q');
          if (i + 1 < s_.size() && s_[i + 1] == U'u') {
            t.push_back(U'U');
            ++i;
          }
          break;
        default: t.push_back(c);
      }
    }
    s_ = std::move(t);
    // u and i between vowels are treated as consonants.
    for (std::size_t i = 1; i + 1 < s_.size(); ++i) {
      if ((s_[i] == U'u' || s_[i] == U'i') && is_vowel(s_[i - 1]) && is_vowel(s_[i + 1])) {
        s_[i] = s_[i] == U'u' ? U'U' : U'I';
      }
    }
  }

  void mark_regions() {
    const std::size_t n = s_.size();
    pv_ = p1_ = p2_ = n;
    auto next_vowel_after = [&](std::size_t from) -> std::size_t {
      for (std::size_t i = from; i < n; ++i)
        if (is_vowel(s_[i])) return i + 1;
      return n + 1;  // not found
    };
    auto next_consonant_after = [&](std::size_t from) -> std::size_t {
      for (std::size_t i = from; i < n; ++i)
        if (!is_vowel(s_[i])) return i + 1;
      return n + 1;
    };
    if (n >= 2) {
      if (is_vowel(s_[0])) {
        std::size_t p = !is_vowel(s_[1]) ? next_vowel_after(2) : next_consonant_after(2);
        if (p <= n) pv_ = p;
      } else if (std::u32string_view(s_).starts_with(U"divan")) {
        pv_ = 5;
      } else if (!is_vowel(s_[1])) {
        std::size_t p = next_vowel_after(2);
        if (p <= n) pv_ = p;
      } else if (n >= 3) {
        pv_ = 3;
      }
    }
    std::size_t i = 0;
    while (i < n && !is_vowel(s_[i])) ++i;
    while (i < n && is_vowel(s_[i])) ++i;
    if (i < n) {
      p1_ = i + 1;
      i = p1_;
      while (i < n && !is_vowel(s_[i])) ++i;
      while (i < n && is_vowel(s_[i])) ++i;
      if (i < n) p2_ = i + 1;
    }
  }

  void attached_pronoun() {
    auto pron = longest(s_, kPronouns);
    if (pron.empty()) return;
    const std::size_t pstart = s_.size() - pron.size();
    static const std::u32string_view gerund[] = {U"ando", U"endo"};
    static const std::u32string_view infinitive[] = {U"ar", U"er", U"ir"};
    for (auto g : gerund) {
      if (ends_with_at(s_, pstart, g)) {
        if (pstart - g.size() >= pv_) s_.resize(pstart);
        return;
      }
    }
    for (auto g : infinitive) {
      if (ends_with_at(s_, pstart, g)) {
        if (pstart - g.size() >= pv_) {
          s_.resize(pstart);
          s_.push_back(U'e');
        }
        return;
      }
    }
  }

  bool r2(std::size_t pos) const { return pos >= p2_; }
  bool rv(std::size_t pos) const { return pos >= pv_; }

  // Deletes `suf` if it ends the word and starts in R2.
  bool delete_if_r2(std::u32string_view suf) {
    if (ends_with(s_, suf) && r2(s_.size() - suf.size())) {
      s_.resize(s_.size() - suf.size());
      return true;
    }
    return false;
  }

  bool standard_suffix() {
    const StdSuffix* best = nullptr;
    for (const auto& e : kStandard) {
      if (ends_with(s_, e.text) && (!best || e.text.size() > best->text.size())) best = &e;
    }
    if (!best) return false;
    const std::size_t start = s_.size() - best->text.size();
    switch (best->action) {
      case Action::del_r2:
        if (!r2(start)) return false;
        s_.resize(start);
        break;
      case Action::del_r2_ic:
        if (!r2(start)) return false;
        s_.resize(start);
        delete_if_r2(U"ic");
        break;
      case Action::log:
        if (!r2(start)) return false;
        s_.resize(start);
        s_ += U"log";
        break;
      case Action::u:
        if (!r2(start)) return false;
        s_.resize(start);
        s_ += U"u";
        break;
      case Action::ente:
        if (!r2(start)) return false;
        s_.resize(start);
        s_ += U"ente";
        break;
      case Action::del_rv:
        if (!rv(start)) return false;
        s_.resize(start);
        break;
      case Action::amente:
        if (start < p1_) return false;
        s_.resize(start);
        if (ends_with(s_, U"iv")) {
          if (delete_if_r2(U"iv")) delete_if_r2(U"at");
        } else {
          for (auto pre : {U"abil", U"ic", U"os"}) {
            if (ends_with(s_, pre)) {
              delete_if_r2(pre);
              break;
            }
          }
        }
        break;
      case Action::ita:
        if (!r2(start)) return false;
        s_.resize(start);
        for (auto pre : {U"abil", U"ic", U"iv"}) {
          if (ends_with(s_, pre)) {
            delete_if_r2(pre);
            break;
          }
        }
        break;
      case Action::iv:
        if (!r2(start)) return false;
        s_.resize(start);
        if (delete_if_r2(U"at")) delete_if_r2(U"ic");
        break;
    }
    return true;
  }

  void verb_suffix() {
    auto suf = longest(s_, kVerb, pv_);
    if (!suf.empty()) s_.resize(s_.size() - suf.size());
  }

  void vowel_suffix() {
    if (!s_.empty() && is_aeio(s_.back()) && rv(s_.size() - 1)) {
      s_.pop_back();
      if (!s_.empty() && s_.back() == U'i' && rv(s_.size() - 1)) s_.pop_back();
    }
    if (s_.size() >= 2 && s_.back() == U'h' && (s_[s_.size() - 2] == U'c' || s_[s_.size() - 2] == U'g') &&
        rv(s_.size() - 2)) {
      s_.pop_back();
    }
  }

  std::u32string s_;
  std::size_t pv_ = 0, p1_ = 0, p2_ = 0;
};

}  // namespace

std::string italian(std::string_view word) {
  return utf8::encode(ItalianStemmer(utf8::decode(word)).run());
}

}  // namespace doitk::stem
