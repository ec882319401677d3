#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "doitk/community.hpp"
#include "doitk/convgraph.hpp"
#include "doitk/matrix.hpp"

namespace doitk::doi {

struct Doi {
  std::size_t id = 0;
  std::vector<std::size_t> buckets;   // ascending
  std::vector<std::string> top_terms;
  std::string label;                  // empty until attached
};

struct DoiModel {
  std::vector<Doi> dois;
  std::vector<std::size_t> bucket_to_doi;

  std::string label_of(std::size_t id) const;  // "D<id>" when unlabeled
};

/// One DoI per community; top terms rank the sum of W over the DoI's buckets,
/// ties by term.
DoiModel form_dois(const community::Partition& partition, const DenseMatrix& W, std::size_t n_terms,
                   const std::vector<std::string>& terms);

struct DoiProb {
  std::size_t doi;
  double probability;
  bool operator==(const DoiProb&) const = default;
};

/// p(m, D) is the max bucket probability over the message's buckets in D.
/// Sorted by probability descending, ties by DoI id.
std::vector<DoiProb> assign_message(const std::vector<nmf::BucketProb>& buckets, const DoiModel& model);

struct Assignment {
  std::string message_id;
  std::vector<DoiProb> dois;
};

/// In the order of `ids`.
std::vector<Assignment> assign_messages(const std::vector<std::string>& ids, const convgraph::BucketMap& buckets,
                                        const DoiModel& model);

/// "doi\tlabel" lines; unknown ids are a DataError.
void attach_labels(DoiModel& model, std::string_view labels_tsv);

std::string model_json(const DoiModel& model);
DoiModel read_model_json(std::string_view text);
/// One {"message_id", "dois": [{"id","label","p"}]} object per line.
std::string assignments_jsonl(const std::vector<Assignment>& a, const DoiModel& model);
std::vector<Assignment> read_assignments_jsonl(std::string_view text);

}  // namespace doitk::doi
