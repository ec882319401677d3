#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "doitk/corpus.hpp"
#include "doitk/doi.hpp"

namespace doitk::netanalysis {

/// One arc per message.
struct Arc {
  std::string message_id;
  std::string sender;
  std::string recipient;
  std::int64_t timestamp = 0;
};

struct CommGraph {
  std::vector<Arc> arcs;
  std::size_t user_count() const;
  std::size_t dyad_count() const;
};

CommGraph build_comm_graph(const std::vector<corpus::Message>& messages);

/// message id -> DoI list (descending probability).
using DoiLists = std::unordered_map<std::string, std::vector<doi::DoiProb>>;
DoiLists to_lists(const std::vector<doi::Assignment>& assignments);

struct Subgraph {
  std::size_t doi = 0;
  std::vector<Arc> arcs;
  std::size_t user_count() const;
  std::size_t dyad_count() const;
};

/// Arcs whose message's DoI list contains `doi_id`.
Subgraph induce_subgraph(const CommGraph& comm, const DoiLists& lists, std::size_t doi_id, std::size_t doi_count);

struct Coverage {
  double nodes = 0.0;
  double dyads = 0.0;
  double messages = 0.0;
};
Coverage coverage(const Subgraph& sub, const CommGraph& full);

/// min(n_uv, n_vu) / max(n_uv, n_vu).
double dyad_reciprocity(std::size_t n_uv, std::size_t n_vu);
/// Unweighted mean of dyad reciprocity over the dyads present in `arcs`.
double reciprocity(const std::vector<Arc>& arcs);

/// Per-DoI mean over dyads of the share of the dyad's assigned messages
/// attributed to the DoI. Hard: top DoI; soft: p(m,D) / sum_D p(m,D).
std::vector<double> tie_share(const corpus::DyadIndex& dyads, const DoiLists& lists, std::size_t doi_count,
                              bool soft = false);

/// |A∩B| / |A∪B|, 0 when both are empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Category -> entries; an entry ending in '*' matches by prefix.
using Lexicon = std::map<std::string, std::vector<std::string>>;
Lexicon parse_lexicon(std::string_view text);
/// Share of the raw tokens of `texts` matching any entry of `category`.
double lexicon_ratio(const std::vector<std::string>& texts, const Lexicon& lexicon, const std::string& category);
double lexicon_ratio(const std::vector<std::vector<std::string>>& tokens, const Lexicon& lexicon,
                     const std::string& category);

struct UserMetadata {
  std::map<std::string, std::set<std::string>> neighbors;
  std::map<std::string, std::set<std::string>> groups;
  std::map<std::string, std::set<std::string>> items;
  std::set<corpus::UserPair> kin;
};
/// CSV "user,value" adjacency list.
std::map<std::string, std::set<std::string>> parse_membership_csv(std::string_view text);
/// CSV "user_a,user_b,relation".
std::set<corpus::UserPair> parse_kinship_csv(std::string_view text);

struct StrengthRow {
  std::size_t doi = 0;
  double sigma_neighbors = 0.0;
  double sigma_groups = 0.0;
  double sigma_items = 0.0;
  double conv_len = 0.0;   // DoI messages per subgraph dyad
  double msg_len = 0.0;    // raw tokens per DoI message
  std::map<std::string, double> lexicon;
  double kinship = 0.0;    // share of subgraph dyads declared kin
};
StrengthRow strength(const Subgraph& sub, const corpus::MessageStore& store, const UserMetadata& meta,
                     const Lexicon& lexicon);

/// Family A: x = dyad length L; family B: x = step n (1-based).
struct CurvePoint {
  std::size_t x = 0;
  std::size_t support = 0;         // dyads contributing
  std::vector<double> share;       // per DoI
};
struct EvolutionCurves {
  std::vector<CurvePoint> by_length;
  std::vector<CurvePoint> by_step;
};
/// Dyad timelines are restricted to messages with a DoI assignment.
EvolutionCurves evolution_curves(const corpus::DyadIndex& dyads, const DoiLists& lists, std::size_t doi_count,
                                 bool soft = false);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct ReciprocityCurve {
  std::vector<std::size_t> length;
  std::vector<double> reciprocity;
  std::vector<std::size_t> support;
  LinearFit fit;
};
/// Needs at least two distinct dyad lengths (NumericalError otherwise).
ReciprocityCurve reciprocity_vs_length(const corpus::DyadIndex& dyads, const corpus::MessageStore& store);

struct Lorenz {
  std::vector<double> population;  // 0, 1/n, ..., 1
  std::vector<double> wealth;      // cumulative share
  double gini = 0.0;
};
/// DataError on an empty or all-zero vector, or a negative entry.
Lorenz lorenz_gini(std::vector<double> wealth);
double gini_sorted(std::vector<double> wealth);
double gini_pairwise(const std::vector<double>& wealth);
double gini_lorenz_area(const Lorenz& l);

enum class Wealth { in_degree, in_strength };
/// Wealth of every user appearing in `arcs`.
std::vector<double> user_wealth(const std::vector<Arc>& arcs, Wealth w);

struct Edge {
  std::string source;
  std::string target;
};
/// Multigraph: one edge per arc. Simple: duplicate (source, target) collapsed.
std::vector<Edge> edges_of(const std::vector<Arc>& arcs, bool simple);

/// Pearson correlation over edges of (in-degree(source), in-degree(target)),
/// in-degree counted over `edges`. NumericalError on zero variance or < 2 edges.
double assortativity(const std::vector<Edge>& edges);

struct AssortativityResult {
  double r = 0.0;
  double jackknife_stderr = 0.0;
  double rewired_r = 0.0;
  std::size_t edges = 0;
};
/// Jackknife: leave one edge out, degrees fixed, sigma^2 = sum (r_e - r)^2.
/// Baseline: mean r over `replicates` double-edge-swap rewirings with
/// 10 x E swap attempts each (self-loops rejected; duplicates rejected in
/// simple mode).
AssortativityResult assortativity_report(const std::vector<Edge>& edges, bool simple, std::size_t replicates,
                                         std::uint64_t seed);

struct AnalysisConfig {
  bool soft_tie_share = false;
  bool simple_graph = false;
  Wealth wealth = Wealth::in_degree;
  std::size_t rewire_replicates = 20;
  std::uint64_t seed = 0;
};

struct Inputs {
  const corpus::MessageStore* store = nullptr;
  const corpus::DyadIndex* dyads = nullptr;
  const doi::DoiModel* model = nullptr;
  const std::vector<doi::Assignment>* assignments = nullptr;
  const UserMetadata* meta = nullptr;
  const Lexicon* lexicon = nullptr;
};

/// Files (name -> content): analysis.json and the five figure tables.
std::map<std::string, std::string> analyze(const Inputs& in, const AnalysisConfig& config);

}  // namespace doitk::netanalysis
