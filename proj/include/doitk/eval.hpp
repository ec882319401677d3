#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "doitk/doi.hpp"

namespace doitk::eval {

using LabelSet = std::set<std::string>;
using LabelList = std::vector<std::string>;  // ordered, most probable first

struct GroundTruth {
  std::map<std::string, LabelSet> labels;  // message id -> consensus labels (empty = unlabeled)
  /// message id -> annotator id -> labels; empty when the file has no annotator column.
  std::map<std::string, std::map<std::string, LabelSet>> by_annotator;

  LabelSet alphabet() const;
};

/// CSV with header message_id,labels[,annotator_id]; labels separated by ';'.
/// With annotators, the consensus keeps labels chosen by at least half of a
/// message's annotators.
GroundTruth parse_ground_truth(std::string_view csv);
GroundTruth read_ground_truth(const std::string& path);

enum class Mode { soft, hard };
Mode parse_mode(std::string_view s);

enum class Match { perfect, first, partial, none };
std::string match_name(Match m);

/// Checked in the order perfect, first, partial, none. Hard mode uses only
/// L[0]: perfect when L[0] is in S, none otherwise.
Match classify(const LabelList& algo, const LabelSet& truth, Mode mode);
/// |set(L) ∩ S| / |set(L)| (hard mode: L[0] only).
double precision(const LabelList& algo, const LabelSet& truth, Mode mode);

struct MatchReport {
  double perfect = 0.0;
  double first = 0.0;
  double partial = 0.0;
  double none = 0.0;
  double precision = 0.0;
  std::size_t scored = 0;
  std::size_t unlabeled_excluded = 0;
  std::size_t unassigned_excluded = 0;
};

/// Scores every labeled truth message that has an assignment. Every label in
/// `algo` and `truth` must belong to `alphabet` (DataError otherwise).
MatchReport match_assignments(const std::map<std::string, LabelList>& algo, const GroundTruth& truth,
                              const LabelSet& alphabet, Mode mode);

/// Uniform random ordered label lists with sizes drawn from `sizes`, averaged
/// over `trials`; trial t uses its own seeded stream.
MatchReport random_baseline(const GroundTruth& truth, const LabelSet& alphabet, const std::vector<std::size_t>& sizes,
                            std::size_t trials, std::uint64_t seed, Mode mode);

/// Fleiss' kappa of one binary category; ratings[item][rater] in {0,1}.
/// Returns 1 when expected agreement is 1 and observed agreement is 1.
double fleiss_kappa_binary(const std::vector<std::vector<int>>& ratings);
/// Per-label binary kappa macro-averaged over the alphabet.
double fleiss_kappa(const GroundTruth& truth, const LabelSet& alphabet);

/// Label lists from DoI assignments and a model with labels attached.
std::map<std::string, LabelList> label_lists(const std::vector<doi::Assignment>& assignments,
                                             const doi::DoiModel& model);

/// Names each DoI after the most common planted label among the messages
/// whose top DoI it is (ties lexicographic; "D<id>" when it has none).
void label_dois_by_majority(doi::DoiModel& model, const std::vector<doi::Assignment>& assignments,
                            const GroundTruth& planted);

std::string report_json(const MatchReport& real, const MatchReport* baseline, Mode mode);

}  // namespace doitk::eval
