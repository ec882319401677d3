#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "doitk/corpus.hpp"
#include "doitk/matrix.hpp"
#include "doitk/stemmer.hpp"

namespace doitk::textprep {

struct PrepConfig {
  std::unordered_set<std::string> stopwords;
  stem::Language language = stem::Language::english;
  double high_df_cut = 0.60;
  double low_df_cut = 0.01;
  std::size_t vocab_cap = 10000;
  std::size_t ngram_max = 3;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

/// One token per line, UTF-8; blank lines and surrounding whitespace ignored.
std::unordered_set<std::string> read_stopwords(const std::filesystem::path& path);

/// Lowercased maximal runs of alphanumeric characters. No filtering.
std::vector<std::string> raw_tokens(std::string_view text);

/// raw_tokens, minus stopwords, stemmed. Tokens whose stem is empty are dropped.
std::vector<std::string> tokenize(std::string_view text, const PrepConfig& config);

/// Unigrams, then bigrams, then trigrams (up to ngram_max), each in order of
/// appearance; grams joined with a single space.
std::vector<std::string> expand_ngrams(const std::vector<std::string>& tokens, std::size_t ngram_max = 3);

struct Vocabulary {
  std::vector<std::string> terms;            // index -> term
  std::vector<std::size_t> doc_freq;         // messages containing the term
  std::vector<std::size_t> corpus_freq;      // total occurrences
  std::size_t document_count = 0;            // corpus size the counts refer to

  std::size_t size() const { return terms.size(); }
};

/// Document-frequency filter, then the `vocab_cap` most frequent n-grams by
/// corpus frequency (ties lexicographic). Terms are indexed in that rank order.
/// Throws DataError on an empty corpus or an empty result.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, const PrepConfig& config);

struct TermDocumentMatrix {
  SparseMatrix matrix;                    // terms x retained messages
  std::vector<std::string> column_ids;    // column -> message id
  std::size_t dropped = 0;                // messages with no weighted in-vocabulary term
  double drop_fraction = 0.0;
};

/// Sublinear TF-IDF weight (1 + ln tf) * ln(n / df); zero when tf == 0.
double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n);

/// `docs[i]` holds the n-grams of the message `ids[i]`.
TermDocumentMatrix vectorize(const std::vector<std::vector<std::string>>& docs,
                             const std::vector<std::string>& ids, const Vocabulary& vocab);

struct Prepared {
  Vocabulary vocabulary;
  TermDocumentMatrix tdm;
};

/// tokenize + expand_ngrams + build_vocabulary + vectorize over a corpus.
Prepared prepare(const std::vector<corpus::Message>& messages, const PrepConfig& config);

std::string write_vocabulary(const Vocabulary& v);
Vocabulary read_vocabulary(std::string_view text);

}  // namespace doitk::textprep
