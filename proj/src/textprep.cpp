#include "doitk/textprep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/utf8.hpp"

namespace doitk::textprep {

void PrepConfig::validate() const {
  if (!(low_df_cut >= 0.0 && low_df_cut < high_df_cut && high_df_cut <= 1.0))
    throw ConfigError("prep: require 0 <= low_df_cut < high_df_cut <= 1");
  if (vocab_cap < 1) throw ConfigError("prep: vocab_cap must be >= 1");
  if (ngram_max < 1) throw ConfigError("prep: ngram_max must be >= 1");
}

std::unordered_set<std::string> read_stopwords(const std::filesystem::path& path) {
  std::unordered_set<std::string> out;
  for (const auto& line : io::split(io::read_file(path), '\n')) {
    auto w = io::trim(line);
    if (w.empty()) continue;
    // Stopwords are matched against lowercased tokens.
    std::u32string u = utf8::decode(w);
    for (auto& c : u) c = utf8::to_lower(c);
    out.insert(utf8::encode(u));
  }
  return out;
}

std::vector<std::string> raw_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::u32string cur;
  for (char32_t c : utf8::decode(text)) {
    if (utf8::is_alnum(c)) {
      cur.push_back(utf8::to_lower(c));
    } else if (!cur.empty()) {
      out.push_back(utf8::encode(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(utf8::encode(cur));
  return out;
}

std::vector<std::string> tokenize(std::string_view text, const PrepConfig& config) {
  std::vector<std::string> out;
  for (auto& tok : raw_tokens(text)) {
    if (config.stopwords.contains(tok)) continue;
    auto s = stem::stem(tok, config.language);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> expand_ngrams(const std::vector<std::string>& tokens, std::size_t ngram_max) {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  for (std::size_t n = 2; n <= ngram_max; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string g = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        g += ' ';
        g += tokens[i + j];
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, const PrepConfig& config) {
  config.validate();
  if (docs.empty()) throw DataError("build_vocabulary: empty corpus");
  struct Counts {
    std::size_t df = 0;
    std::size_t cf = 0;
    std::size_t last_doc = static_cast<std::size_t>(-1);
  };
  std::unordered_map<std::string, Counts> counts;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& g : docs[d]) {
      auto& c = counts[g];
      ++c.cf;
      if (c.last_doc != d) {
        c.last_doc = d;
        ++c.df;
      }
    }
  }
  const double n = static_cast<double>(docs.size());
  struct Entry {
    const std::string* term;
    std::size_t df, cf;
  };
  std::vector<Entry> kept;
  for (const auto& [term, c] : counts) {
    double ratio = static_cast<double>(c.df) / n;
    if (ratio > config.high_df_cut || ratio < config.low_df_cut) continue;
    kept.push_back({&term, c.df, c.cf});
  }
  if (kept.empty()) throw DataError("build_vocabulary: no term survives the document-frequency filter");
  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
    return a.cf != b.cf ? a.cf > b.cf : *a.term < *b.term;
  });
  if (kept.size() > config.vocab_cap) kept.resize(config.vocab_cap);

  Vocabulary v;
  v.document_count = docs.size();
  v.terms.reserve(kept.size());
  for (const auto& e : kept) {
    v.terms.push_back(*e.term);
    v.doc_freq.push_back(e.df);
    v.corpus_freq.push_back(e.cf);
  }
  return v;
}

double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n) {
  if (tf == 0 || df == 0) return 0.0;
  return (1.0 + std::log(static_cast<double>(tf))) *
         std::log(static_cast<double>(n) / static_cast<double>(df));
}

TermDocumentMatrix vectorize(const std::vector<std::vector<std::string>>& docs,
                             const std::vector<std::string>& ids, const Vocabulary& vocab) {
  if (docs.size() != ids.size()) throw DataError("vectorize: docs and ids differ in length");
  std::unordered_map<std::string_view, std::uint32_t> index;
  index.reserve(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab.terms[i], static_cast<std::uint32_t>(i));
  const std::size_t n = vocab.document_count;

  // Per-message columns are independent; each worker writes only its own slot.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> columns(docs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(docs.size()); ++d) {
    std::map<std::uint32_t, std::size_t> tf;
    for (const auto& g : docs[d]) {
      auto it = index.find(g);
      if (it != index.end()) ++tf[it->second];
    }
    auto& col = columns[d];
    for (auto [term, count] : tf) {
      double w = tfidf_weight(count, vocab.doc_freq[term], n);
      if (w > 0.0) col.emplace_back(term, w);
    }
  }

  TermDocumentMatrix tdm;
  std::vector<Triplet> trip;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (columns[d].empty()) {
      ++tdm.dropped;
      continue;
    }
    auto c = static_cast<std::uint32_t>(tdm.column_ids.size());
    tdm.column_ids.push_back(ids[d]);
    for (auto [term, w] : columns[d]) trip.push_back({term, c, w});
  }
  tdm.matrix = SparseMatrix::from_triplets(vocab.size(), tdm.column_ids.size(), std::move(trip));
  tdm.drop_fraction = docs.empty() ? 0.0 : static_cast<double>(tdm.dropped) / static_cast<double>(docs.size());
  return tdm;
}

Prepared prepare(const std::vector<corpus::Message>& messages, const PrepConfig& config) {
  config.validate();
  std::vector<std::vector<std::string>> docs(messages.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(messages.size()); ++i)
    docs[i] = expand_ngrams(tokenize(messages[i].text, config), config.ngram_max);
  std::vector<std::string> ids;
  ids.reserve(messages.size());
  for (const auto& m : messages) ids.push_back(m.id);
  Prepared p;
  p.vocabulary = build_vocabulary(docs, config);
  p.tdm = vectorize(docs, ids, p.vocabulary);
  return p;
}

std::string write_vocabulary(const Vocabulary& v) {
  std::string out = "# documents " + std::to_string(v.document_count) + "\nindex\tterm\tdf\tcf\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += std::to_string(i) + "\t" + v.terms[i] + "\t" + std::to_string(v.doc_freq[i]) + "\t" +
           std::to_string(v.corpus_freq[i]) + "\n";
  }
  return out;
}

Vocabulary read_vocabulary(std::string_view text) {
  Vocabulary v;
  auto lines = io::split(text, '\n');
  auto to_size = [](const std::string& s) {
    std::size_t x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) throw DataError("vocabulary: bad number '" + s + "'");
    return x;
  };
  bool header_seen = false;
  for (const auto& line : lines) {
    if (line.empty()) continue;
    if (line.starts_with("# documents ")) {
      v.document_count = to_size(line.substr(12));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto f = io::split(line, '\t');
    if (f.size() != 4) throw DataError("vocabulary: expected 4 columns");
    if (to_size(f[0]) != v.terms.size()) throw DataError("vocabulary: indices must be dense");
    v.terms.push_back(f[1]);
    v.doc_freq.push_back(to_size(f[2]));
    v.corpus_freq.push_back(to_size(f[3]));
  }
  return v;
}

}  // namespace doitk::textprep
