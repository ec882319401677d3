#include "doitk/convgraph.hpp"

#include <algorithm>

#include "doitk/error.hpp"
#include "doitk/io.hpp"

namespace doitk::convgraph {

std::vector<Transition> extract_transitions(const corpus::DyadIndex& dyads, const corpus::MessageStore& store) {
  std::vector<Transition> out;
  for (const auto& d : dyads.dyads) {
    for (std::size_t i = 1; i < d.message_ids.size(); ++i) {
      const auto& a = store.get(d.message_ids[i - 1]);
      const auto& b = store.get(d.message_ids[i]);
      if (a.sender != b.sender) out.push_back({a.id, b.id, d.users});
    }
  }
  return out;
}

std::size_t ConversationGraph::edge_count() const {
  std::size_t c = 0;
  for (double w : weight.data())
    if (w > 0.0) ++c;
  return c;
}

double ConversationGraph::total_weight() const {
  double s = 0.0;
  for (double w : weight.data()) s += w;
  return s;
}

ConversationGraph build_graph(const std::vector<Transition>& transitions, const BucketMap& buckets, std::size_t k) {
  if (k < 1) throw ConfigError("build_graph: k must be >= 1");
  ConversationGraph g;
  g.k = k;
  g.weight = DenseMatrix(k, k);
  g.node_mass.assign(k, 0.0);

  std::vector<std::vector<double>> contrib(k * k);
  for (const auto& t : transitions) {
    auto x = buckets.find(t.first), y = buckets.find(t.second);
    if (x == buckets.end() || y == buckets.end()) {
      ++g.transitions_skipped;
      continue;
    }
    ++g.transitions_used;
    for (const auto& bx : x->second)
      for (const auto& by : y->second) {
        if (bx.bucket >= k || by.bucket >= k) throw DataError("build_graph: bucket index out of range");
        if (bx.bucket == by.bucket) continue;
        contrib[bx.bucket * k + by.bucket].push_back(bx.probability * by.probability);
      }
  }
  for (std::size_t e = 0; e < contrib.size(); ++e) {
    auto& c = contrib[e];
    std::sort(c.begin(), c.end());
    double s = 0.0;
    for (double v : c) s += v;
    g.weight.data()[e] = s;
  }

  std::vector<std::vector<double>> mass(k);
  for (const auto& [id, list] : buckets)
    for (const auto& b : list)
      if (b.bucket < k) mass[b.bucket].push_back(b.probability);
  for (std::size_t b = 0; b < k; ++b) {
    std::sort(mass[b].begin(), mass[b].end());
    for (double v : mass[b]) g.node_mass[b] += v;
  }
  return g;
}

std::string edges_tsv(const ConversationGraph& g) {
  std::string out = "src\tdst\tweight\n";
  for (std::size_t i = 0; i < g.k; ++i)
    for (std::size_t j = 0; j < g.k; ++j)
      if (g.weight(i, j) > 0.0)
        out += std::to_string(i) + '\t' + std::to_string(j) + '\t' + io::format_double(g.weight(i, j)) + '\n';
  return out;
}

ConversationGraph read_edges_tsv(std::string_view text, std::size_t k) {
  ConversationGraph g;
  g.k = k;
  g.weight = DenseMatrix(k, k);
  g.node_mass.assign(k, 0.0);
  auto lines = io::split(text, '\n');
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (io::trim(lines[ln]).empty()) continue;
    auto f = io::split(lines[ln], '\t');
    if (f.size() != 3) throw DataError("graph edges line " + std::to_string(ln + 1) + ": expected 3 fields");
    try {
      const std::size_t i = std::stoul(f[0]), j = std::stoul(f[1]);
      const double w = std::stod(f[2]);
      if (i >= k || j >= k || i == j || !(w >= 0.0))
        throw DataError("graph edges line " + std::to_string(ln + 1) + ": invalid edge");
      g.weight(i, j) = w;
    } catch (const std::logic_error&) {
      throw DataError("graph edges line " + std::to_string(ln + 1) + ": bad number");
    }
  }
  return g;
}

std::string nodes_tsv(const ConversationGraph& g, const std::vector<std::vector<std::string>>& top_terms) {
  std::string out = "bucket\tmessage_mass\ttop_terms\n";
  for (std::size_t b = 0; b < g.k; ++b) {
    std::string terms;
    if (b < top_terms.size())
      for (std::size_t i = 0; i < top_terms[b].size(); ++i) {
        if (i) terms += " | ";
        terms += top_terms[b][i];
      }
    out += std::to_string(b) + '\t' + io::format_double(g.node_mass[b]) + '\t' + terms + '\n';
  }
  return out;
}

}  // namespace doitk::convgraph
