#include <doctest.h>

#include <cmath>

#include "doitk/error.hpp"
#include "doitk/textprep.hpp"

using namespace doitk;
using namespace doitk::textprep;

TEST_CASE("tokenize") {
  PrepConfig cfg;
  CHECK(tokenize("Great SHOT!!!", cfg) == std::vector<std::string>{"great", "shot"});
  cfg.stopwords = {"the", "of", "and"};
  CHECK(tokenize("the of and", cfg).empty());
  // Golden values from the Porter stemmer.
  CHECK(tokenize("reading readers read", PrepConfig{}) == std::vector<std::string>{"read", "reader", "read"});
  CHECK(tokenize("--- ... !!", PrepConfig{}).empty());
}

TEST_CASE("raw_tokens lowercases beyond ASCII") {
  CHECK(raw_tokens("\xc3\x80NCORA, Perch\xc3\xa9?") == std::vector<std::string>{"\xc3\xa0ncora", "perch\xc3\xa9"});
}

TEST_CASE("expand_ngrams") {
  CHECK(expand_ngrams({"a"}) == std::vector<std::string>{"a"});
  CHECK(expand_ngrams({"a", "b"}) == std::vector<std::string>{"a", "b", "a b"});
  CHECK(expand_ngrams({"a", "b", "c"}) == std::vector<std::string>{"a", "b", "c", "a b", "b c", "a b c"});
  CHECK(expand_ngrams({"a", "b", "c"}, 1) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("build_vocabulary: document-frequency cuts") {
  PrepConfig cfg;
  std::vector<std::vector<std::string>> docs(1000);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].push_back("everywhere");
    docs[i].push_back(i % 2 ? "odd" : "even");
  }
  docs[7].push_back("rare");
  auto v = build_vocabulary(docs, cfg);
  CHECK(v.terms == std::vector<std::string>{"even", "odd"});
  CHECK(v.doc_freq == std::vector<std::size_t>{500, 500});
  CHECK(v.document_count == 1000);
}

TEST_CASE("build_vocabulary: cap keeps the most frequent, ties lexicographic") {
  PrepConfig cfg;
  cfg.low_df_cut = 0.0;
  cfg.high_df_cut = 1.0;
  cfg.vocab_cap = 10000;
  std::vector<std::vector<std::string>> docs(2);
  for (int t = 0; t < 12000; ++t) {
    docs[0].push_back("t" + std::to_string(t));
    if (t % 3 == 0) docs[0].push_back("t" + std::to_string(t));
  }
  auto v = build_vocabulary(docs, cfg);
  CHECK(v.size() == 10000);
  // 4000 terms occur twice and rank first.
  for (std::size_t i = 0; i < 4000; ++i) CHECK(v.corpus_freq[i] == 2);
  CHECK(v.corpus_freq[4000] == 1);
  CHECK(std::is_sorted(v.terms.begin() + 4000, v.terms.end()));
}

TEST_CASE("build_vocabulary: empty result is an error") {
  std::vector<std::vector<std::string>> docs = {{"x"}, {"x"}};
  CHECK_THROWS_AS(build_vocabulary(docs, PrepConfig{}), DataError);
  CHECK_THROWS_AS(build_vocabulary({}, PrepConfig{}), DataError);
}

TEST_CASE("tfidf_weight") {
  CHECK(tfidf_weight(1, 10, 10) == 0.0);
  CHECK(tfidf_weight(0, 1, 10) == 0.0);
  CHECK(tfidf_weight(2, 1, 10) == doctest::Approx((1 + std::log(2.0)) * std::log(10.0)).epsilon(1e-12));
  CHECK(std::abs(tfidf_weight(2, 1, 10) - 3.899) < 1e-3);
  // Concave in tf.
  const double d1 = tfidf_weight(2, 1, 10) - tfidf_weight(1, 1, 10);
  const double d2 = tfidf_weight(4, 1, 10) - tfidf_weight(2, 1, 10);
  const double d4 = tfidf_weight(8, 1, 10) - tfidf_weight(4, 1, 10);
  CHECK(d2 <= d1 + 1e-15);
  CHECK(d4 <= d2 + 1e-15);
}

TEST_CASE("vectorize drops empty messages and reports the fraction") {
  PrepConfig cfg;
  cfg.low_df_cut = 0.0;
  std::vector<corpus::Message> ms;
  for (int i = 0; i < 200; ++i) {
    std::string text = i < 3 ? "zz" + std::to_string(i) : (i % 2 ? "alpha beta" : "gamma beta delta");
    ms.push_back({"m" + std::to_string(i), "u", "v", i, text});
  }
  cfg.low_df_cut = 0.01;
  auto p = prepare(ms, cfg);
  CHECK(p.tdm.dropped == 3);
  CHECK(p.tdm.drop_fraction == doctest::Approx(0.015));
  CHECK(p.tdm.matrix.cols() == 197);
  // No negative entries, no empty columns.
  for (double v : p.tdm.matrix.col_values()) CHECK(v > 0.0);
  for (std::size_t j = 0; j < p.tdm.matrix.cols(); ++j)
    CHECK(p.tdm.matrix.col_ptr()[j + 1] > p.tdm.matrix.col_ptr()[j]);
  CHECK(p.vocabulary.size() == p.tdm.matrix.rows());
}

TEST_CASE("prepare is deterministic and vocabulary round trips") {
  std::vector<corpus::Message> ms;
  for (int i = 0; i < 50; ++i)
    ms.push_back({"m" + std::to_string(i), "u", "v", i, "w" + std::to_string(i % 7) + " common w" + std::to_string(i % 5)});
  PrepConfig cfg;
  auto a = prepare(ms, cfg), b = prepare(ms, cfg);
  CHECK(a.tdm.matrix == b.tdm.matrix);
  CHECK(a.vocabulary.terms == b.vocabulary.terms);
  auto v = read_vocabulary(write_vocabulary(a.vocabulary));
  CHECK(v.terms == a.vocabulary.terms);
  CHECK(v.doc_freq == a.vocabulary.doc_freq);
  CHECK(v.document_count == a.vocabulary.document_count);
}

TEST_CASE("config validation") {
  PrepConfig cfg;
  cfg.low_df_cut = 0.7;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
