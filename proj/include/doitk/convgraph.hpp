#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "doitk/corpus.hpp"
#include "doitk/matrix.hpp"
#include "doitk/nmf.hpp"

namespace doitk::convgraph {

/// Adjacent opposite-direction messages of one dyad.
struct Transition {
  std::string first;
  std::string second;
  corpus::UserPair dyad;
  bool operator==(const Transition&) const = default;
};

/// Scans each dyad timeline; a message may pair with both neighbours.
std::vector<Transition> extract_transitions(const corpus::DyadIndex& dyads, const corpus::MessageStore& store);

using BucketMap = std::unordered_map<std::string, std::vector<nmf::BucketProb>>;

struct ConversationGraph {
  std::size_t k = 0;
  DenseMatrix weight;               // k x k, weight(i, j) for edge i -> j, zero diagonal
  std::vector<double> node_mass;    // sum of bucket probabilities over messages
  std::size_t transitions_used = 0;
  std::size_t transitions_skipped = 0;  // an endpoint had no bucket assignment

  std::size_t edge_count() const;
  double total_weight() const;
};

/// Edge (b_i -> b_j), b_i != b_j, gains p(m_x, b_i) p(m_y, b_j) per transition.
/// Sums are formed in a canonical order, so the result does not depend on
/// the order of `transitions`.
ConversationGraph build_graph(const std::vector<Transition>& transitions, const BucketMap& buckets, std::size_t k);

/// "src\tdst\tweight" for every positive edge, row-major order.
std::string edges_tsv(const ConversationGraph& g);
ConversationGraph read_edges_tsv(std::string_view text, std::size_t k);
/// "bucket\tmessage_mass\ttop_terms", terms joined by " | ".
std::string nodes_tsv(const ConversationGraph& g, const std::vector<std::vector<std::string>>& top_terms);

}  // namespace doitk::convgraph
