#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "doitk/community.hpp"
#include "doitk/eval.hpp"
#include "doitk/netanalysis.hpp"
#include "doitk/nmf.hpp"
#include "doitk/stemmer.hpp"

namespace doitk::config {

/// Flat "section.key" -> raw value. Lines are "[section]", "key = value" or
/// comments starting with '#'. Quoted values are unquoted.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse(std::string_view text);
/// "section.key=value"
void apply_override(KeyValues& kv, std::string_view assignment);

struct Paths {
  std::string corpus;
  std::string format;        // jsonl | csv | empty = by extension
  std::string stopwords;
  std::string lexicon;
  std::string ground_truth;
  std::string doi_labels;    // "doi\tlabel" file
  std::string neighbors;
  std::string groups;
  std::string items;
  std::string kinship;
  std::string output = "run";
};

struct RunConfig {
  Paths paths;
  stem::Language language = stem::Language::english;
  double high_df_cut = 0.60;
  double low_df_cut = 0.01;
  std::size_t vocab_cap = 10000;
  std::size_t ngram_max = 3;

  nmf::NmfConfig nmf;
  std::vector<std::size_t> k_grid = {4, 8, 12, 16, 20, 24};
  std::size_t fixed_k = 0;   // skip selection when > 0
  double holdout_fraction = 0.1;
  std::size_t top_terms = 10;

  community::SpinglassConfig spinglass;

  eval::Mode mode = eval::Mode::soft;
  double theta = 0.5;

  bool eval_enabled = true;
  std::size_t baseline_trials = 100;
  std::string label_source = "majority";  // majority | file

  bool analysis_enabled = true;
  netanalysis::AnalysisConfig analysis;

  std::uint64_t seed = 0;
  bool skip_malformed = false;

  /// Throws ConfigError on unknown keys or invalid values.
  static RunConfig from(const KeyValues& kv);
  /// Canonical text form (all keys), parseable by `parse`.
  std::string canonical() const;
};

}  // namespace doitk::config
