#include "doitk/netanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <unordered_set>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/rng.hpp"
#include "doitk/textprep.hpp"

namespace doitk::netanalysis {

using nlohmann::json;

namespace {

std::size_t count_users(const std::vector<Arc>& arcs) {
  std::unordered_set<std::string> u;
  for (const auto& a : arcs) {
    u.insert(a.sender);
    u.insert(a.recipient);
  }
  return u.size();
}

std::size_t count_dyads(const std::vector<Arc>& arcs) {
  std::set<corpus::UserPair> d;
  for (const auto& a : arcs) d.insert(corpus::UserPair::of(a.sender, a.recipient));
  return d.size();
}

std::size_t top_doi(const std::vector<doi::DoiProb>& l) { return l.front().doi; }

// Share of one message credited to each DoI.
void credit(const std::vector<doi::DoiProb>& l, bool soft, std::vector<double>& out) {
  if (l.empty()) return;
  if (!soft) {
    out.at(top_doi(l)) += 1.0;
    return;
  }
  double total = 0.0;
  for (const auto& d : l) total += d.probability;
  for (const auto& d : l) out.at(d.doi) += total > 0.0 ? d.probability / total : 0.0;
}

}  // namespace

std::size_t CommGraph::user_count() const { return count_users(arcs); }
std::size_t CommGraph::dyad_count() const { return count_dyads(arcs); }
std::size_t Subgraph::user_count() const { return count_users(arcs); }
std::size_t Subgraph::dyad_count() const { return count_dyads(arcs); }

CommGraph build_comm_graph(const std::vector<corpus::Message>& messages) {
  CommGraph g;
  g.arcs.reserve(messages.size());
  for (const auto& m : messages) g.arcs.push_back({m.id, m.sender, m.recipient, m.timestamp});
  return g;
}

DoiLists to_lists(const std::vector<doi::Assignment>& assignments) {
  DoiLists out;
  for (const auto& a : assignments) out[a.message_id] = a.dois;
  return out;
}

Subgraph induce_subgraph(const CommGraph& comm, const DoiLists& lists, std::size_t doi_id, std::size_t doi_count) {
  if (doi_id >= doi_count) throw ConfigError("induce_subgraph: unknown DoI " + std::to_string(doi_id));
  Subgraph s;
  s.doi = doi_id;
  for (const auto& a : comm.arcs) {
    auto it = lists.find(a.message_id);
    if (it == lists.end()) continue;
    for (const auto& d : it->second)
      if (d.doi == doi_id) {
        s.arcs.push_back(a);
        break;
      }
  }
  return s;
}

Coverage coverage(const Subgraph& sub, const CommGraph& full) {
  if (full.arcs.empty()) throw DataError("coverage: empty communication graph");
  return {static_cast<double>(sub.user_count()) / static_cast<double>(full.user_count()),
          static_cast<double>(sub.dyad_count()) / static_cast<double>(full.dyad_count()),
          static_cast<double>(sub.arcs.size()) / static_cast<double>(full.arcs.size())};
}

double dyad_reciprocity(std::size_t n_uv, std::size_t n_vu) {
  const auto hi = std::max(n_uv, n_vu);
  if (hi == 0) return 0.0;
  return static_cast<double>(std::min(n_uv, n_vu)) / static_cast<double>(hi);
}

double reciprocity(const std::vector<Arc>& arcs) {
  std::map<corpus::UserPair, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& a : arcs) {
    auto key = corpus::UserPair::of(a.sender, a.recipient);
    auto& c = counts[key];
    (a.sender == key.first ? c.first : c.second)++;
  }
  if (counts.empty()) return 0.0;
  double s = 0.0;
  for (const auto& [k, c] : counts) s += dyad_reciprocity(c.first, c.second);
  return s / static_cast<double>(counts.size());
}

std::vector<double> tie_share(const corpus::DyadIndex& dyads, const DoiLists& lists, std::size_t doi_count,
                              bool soft) {
  std::vector<double> total(doi_count, 0.0);
  std::size_t used = 0;
  for (const auto& d : dyads.dyads) {
    std::vector<double> share(doi_count, 0.0);
    std::size_t n = 0;
    for (const auto& id : d.message_ids) {
      auto it = lists.find(id);
      if (it == lists.end() || it->second.empty()) continue;
      credit(it->second, soft, share);
      ++n;
    }
    if (n == 0) continue;
    ++used;
    for (std::size_t x = 0; x < doi_count; ++x) total[x] += share[x] / static_cast<double>(n);
  }
  if (used)
    for (auto& t : total) t /= static_cast<double>(used);
  return total;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& x : a)
    if (b.contains(x)) ++inter;
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
  std::string current;
  auto lines = io::split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto t = io::trim(lines[ln]);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) throw DataError("lexicon line " + std::to_string(ln + 1) + ": bad header");
      current = std::string(t.substr(1, t.size() - 2));
      lex[current];
      continue;
    }
    if (current.empty()) throw DataError("lexicon line " + std::to_string(ln + 1) + ": entry before any category");
    auto toks = textprep::raw_tokens(t);
    std::string entry = toks.empty() ? std::string(t) : toks.front();
    if (t.back() == '*') entry += '*';
    lex[current].push_back(entry);
  }
  return lex;
}

namespace {

bool lexicon_match(const std::string& token, const std::vector<std::string>& entries) {
  for (const auto& e : entries) {
    if (!e.empty() && e.back() == '*') {
      if (token.compare(0, e.size() - 1, e, 0, e.size() - 1) == 0 && token.size() >= e.size() - 1) return true;
    } else if (token == e) {
      return true;
    }
  }
  return false;
}

}  // namespace

double lexicon_ratio(const std::vector<std::vector<std::string>>& tokens, const Lexicon& lexicon,
                     const std::string& category) {
  auto it = lexicon.find(category);
  if (it == lexicon.end()) throw ConfigError("lexicon: unknown category '" + category + "'");
  std::size_t total = 0, hit = 0;
  for (const auto& doc : tokens)
    for (const auto& t : doc) {
      ++total;
      if (lexicon_match(t, it->second)) ++hit;
    }
  return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

double lexicon_ratio(const std::vector<std::string>& texts, const Lexicon& lexicon, const std::string& category) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(texts.size());
  for (const auto& t : texts) tokens.push_back(textprep::raw_tokens(t));
  return lexicon_ratio(tokens, lexicon, category);
}

std::map<std::string, std::set<std::string>> parse_membership_csv(std::string_view text) {
  std::map<std::string, std::set<std::string>> out;
  auto recs = io::parse_csv(text);
  for (std::size_t r = 0; r < recs.size(); ++r) {
    const auto& f = recs[r].fields;
    if (r == 0 && f.size() == 2 && f[0] == "user") continue;
    if (f.size() != 2) throw DataError("membership line " + std::to_string(recs[r].line) + ": expected user,value");
    out[f[0]].insert(f[1]);
  }
  return out;
}

std::set<corpus::UserPair> parse_kinship_csv(std::string_view text) {
  std::set<corpus::UserPair> out;
  auto recs = io::parse_csv(text);
  for (std::size_t r = 0; r < recs.size(); ++r) {
    const auto& f = recs[r].fields;
    if (r == 0 && f.size() == 3 && f[0] == "user_a") continue;
    if (f.size() != 3) throw DataError("kinship line " + std::to_string(recs[r].line) + ": expected user_a,user_b,relation");
    out.insert(corpus::UserPair::of(f[0], f[1]));
  }
  return out;
}

StrengthRow strength(const Subgraph& sub, const corpus::MessageStore& store, const UserMetadata& meta,
                     const Lexicon& lexicon) {
  StrengthRow row;
  row.doi = sub.doi;
  std::set<corpus::UserPair> dyads;
  std::vector<std::vector<std::string>> tokens;
  std::size_t token_total = 0;
  for (const auto& a : sub.arcs) {
    dyads.insert(corpus::UserPair::of(a.sender, a.recipient));
    tokens.push_back(textprep::raw_tokens(store.get(a.message_id).text));
    token_total += tokens.back().size();
  }
  if (dyads.empty()) return row;
  static const std::set<std::string> none;
  auto sim = [&](const std::map<std::string, std::set<std::string>>& m) {
    if (m.empty()) return 0.0;
    double s = 0.0;
    for (const auto& d : dyads) {
      auto a = m.find(d.first), b = m.find(d.second);
      s += jaccard(a == m.end() ? none : a->second, b == m.end() ? none : b->second);
    }
    return s / static_cast<double>(dyads.size());
  };
  row.sigma_neighbors = sim(meta.neighbors);
  row.sigma_groups = sim(meta.groups);
  row.sigma_items = sim(meta.items);
  row.conv_len = static_cast<double>(sub.arcs.size()) / static_cast<double>(dyads.size());
  row.msg_len = static_cast<double>(token_total) / static_cast<double>(sub.arcs.size());
  for (const auto& [cat, entries] : lexicon) row.lexicon[cat] = lexicon_ratio(tokens, lexicon, cat);
  std::size_t kin = 0;
  for (const auto& d : dyads)
    if (meta.kin.contains(d)) ++kin;
  row.kinship = static_cast<double>(kin) / static_cast<double>(dyads.size());
  return row;
}

EvolutionCurves evolution_curves(const corpus::DyadIndex& dyads, const DoiLists& lists, std::size_t doi_count,
                                 bool soft) {
  std::map<std::size_t, CurvePoint> by_len, by_step;
  for (const auto& d : dyads.dyads) {
    std::vector<const std::vector<doi::DoiProb>*> seq;
    for (const auto& id : d.message_ids) {
      auto it = lists.find(id);
      if (it != lists.end() && !it->second.empty()) seq.push_back(&it->second);
    }
    if (seq.empty()) continue;
    std::vector<double> share(doi_count, 0.0);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      std::vector<double> one(doi_count, 0.0);
      credit(*seq[n], soft, one);
      auto& p = by_step[n + 1];
      if (p.share.empty()) p.share.assign(doi_count, 0.0);
      for (std::size_t x = 0; x < doi_count; ++x) {
        p.share[x] += one[x];
        share[x] += one[x];
      }
      ++p.support;
    }
    auto& p = by_len[seq.size()];
    if (p.share.empty()) p.share.assign(doi_count, 0.0);
    for (std::size_t x = 0; x < doi_count; ++x) p.share[x] += share[x] / static_cast<double>(seq.size());
    ++p.support;
  }
  EvolutionCurves out;
  for (auto* fam : {&by_len, &by_step}) {
    auto& dst = fam == &by_len ? out.by_length : out.by_step;
    for (auto& [x, p] : *fam) {
      p.x = x;
      for (auto& s : p.share) s /= static_cast<double>(p.support);
      dst.push_back(std::move(p));
    }
  }
  return out;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw NumericalError("least_squares: need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw NumericalError("least_squares: all x values identical");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ReciprocityCurve reciprocity_vs_length(const corpus::DyadIndex& dyads, const corpus::MessageStore& store) {
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (const auto& d : dyads.dyads) {
    std::size_t fwd = 0, back = 0;
    for (const auto& id : d.message_ids) (store.get(id).sender == d.users.first ? fwd : back)++;
    auto& a = acc[d.message_ids.size()];
    a.first += dyad_reciprocity(fwd, back);
    ++a.second;
  }
  ReciprocityCurve c;
  std::vector<double> xs;
  for (const auto& [len, a] : acc) {
    c.length.push_back(len);
    c.reciprocity.push_back(a.first / static_cast<double>(a.second));
    c.support.push_back(a.second);
    xs.push_back(static_cast<double>(len));
  }
  if (xs.size() < 2) throw NumericalError("reciprocity_vs_length: need at least two distinct lengths");
  c.fit = least_squares(xs, c.reciprocity);
  return c;
}

namespace {

void check_wealth(const std::vector<double>& w) {
  if (w.empty()) throw DataError("gini: empty wealth vector");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DataError("gini: wealth must be finite and non-negative");
    total += x;
  }
  if (total <= 0.0) throw DataError("gini: all-zero wealth vector");
}

}  // namespace

Lorenz lorenz_gini(std::vector<double> wealth) {
  check_wealth(wealth);
  std::sort(wealth.begin(), wealth.end());
  const double n = static_cast<double>(wealth.size());
  const double total = std::accumulate(wealth.begin(), wealth.end(), 0.0);
  Lorenz l;
  l.population.push_back(0.0);
  l.wealth.push_back(0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i < wealth.size(); ++i) {
    cum += wealth[i];
    l.population.push_back(static_cast<double>(i + 1) / n);
    l.wealth.push_back(i + 1 == wealth.size() ? 1.0 : cum / total);
  }
  l.gini = gini_sorted(std::move(wealth));
  return l;
}

double gini_sorted(std::vector<double> wealth) {
  check_wealth(wealth);
  std::sort(wealth.begin(), wealth.end());
  const double n = static_cast<double>(wealth.size());
  double num = 0.0, total = 0.0;
  for (std::size_t i = 0; i < wealth.size(); ++i) {
    num += (2.0 * static_cast<double>(i + 1) - n - 1.0) * wealth[i];
    total += wealth[i];
  }
  return num / (n * total);
}

double gini_pairwise(const std::vector<double>& wealth) {
  check_wealth(wealth);
  const double n = static_cast<double>(wealth.size());
  double diff = 0.0, total = 0.0;
  for (double a : wealth) {
    total += a;
    for (double b : wealth) diff += std::abs(a - b);
  }
  const double mu = total / n;
  return diff / (2.0 * n * n * mu);
}

double gini_lorenz_area(const Lorenz& l) {
  const double n = static_cast<double>(l.wealth.size() - 1);
  double s = 0.0;
  for (std::size_t k = 1; k < l.wealth.size(); ++k) s += l.wealth[k - 1] + l.wealth[k];
  return 1.0 - s / n;
}

std::vector<double> user_wealth(const std::vector<Arc>& arcs, Wealth w) {
  std::map<std::string, std::set<std::string>> senders;
  std::map<std::string, double> strength;
  for (const auto& a : arcs) {
    senders[a.sender];
    strength[a.sender];
    senders[a.recipient].insert(a.sender);
    strength[a.recipient] += 1.0;
  }
  std::vector<double> out;
  if (w == Wealth::in_degree)
    for (const auto& [u, s] : senders) out.push_back(static_cast<double>(s.size()));
  else
    for (const auto& [u, s] : strength) out.push_back(s);
  return out;
}

std::vector<Edge> edges_of(const std::vector<Arc>& arcs, bool simple) {
  std::vector<Edge> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& a : arcs) {
    if (simple && !seen.emplace(a.sender, a.recipient).second) continue;
    out.push_back({a.sender, a.recipient});
  }
  return out;
}

namespace {

struct IndexedEdges {
  std::vector<std::size_t> src, dst;
  std::size_t nodes = 0;
};

IndexedEdges index_edges(const std::vector<Edge>& edges) {
  std::map<std::string, std::size_t> ids;
  IndexedEdges ie;
  auto id = [&](const std::string& u) { return ids.try_emplace(u, ids.size()).first->second; };
  for (const auto& e : edges) {
    ie.src.push_back(id(e.source));
    ie.dst.push_back(id(e.target));
  }
  ie.nodes = ids.size();
  return ie;
}

std::vector<double> in_degrees(const IndexedEdges& ie) {
  std::vector<double> d(ie.nodes, 0.0);
  for (auto t : ie.dst) d[t] += 1.0;
  return d;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw NumericalError("assortativity: zero variance of endpoint in-degrees");
  return sxy / std::sqrt(sxx * syy);
}

double r_of(const IndexedEdges& ie) {
  if (ie.src.size() < 2) throw NumericalError("assortativity: need at least 2 edges");
  const auto deg = in_degrees(ie);
  std::vector<double> x, y;
  for (std::size_t e = 0; e < ie.src.size(); ++e) {
    x.push_back(deg[ie.src[e]]);
    y.push_back(deg[ie.dst[e]]);
  }
  return pearson(x, y);
}

}  // namespace

double assortativity(const std::vector<Edge>& edges) { return r_of(index_edges(edges)); }

AssortativityResult assortativity_report(const std::vector<Edge>& edges, bool simple, std::size_t replicates,
                                         std::uint64_t seed) {
  const auto ie = index_edges(edges);
  AssortativityResult res;
  res.edges = ie.src.size();
  res.r = r_of(ie);

  const auto deg = in_degrees(ie);
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t e = 0; e < ie.src.size(); ++e) {
    const double x = deg[ie.src[e]], y = deg[ie.dst[e]];
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  double var = 0.0;
  const double m = static_cast<double>(ie.src.size() - 1);
  for (std::size_t e = 0; e < ie.src.size(); ++e) {
    const double x = deg[ie.src[e]], y = deg[ie.dst[e]];
    const double ax = sx - x, ay = sy - y;
    const double cov = m * (sxy - x * y) - ax * ay;
    const double vx = m * (sxx - x * x) - ax * ax, vy = m * (syy - y * y) - ay * ay;
    if (vx <= 0.0 || vy <= 0.0) continue;
    const double re = cov / std::sqrt(vx * vy);
    var += (re - res.r) * (re - res.r);
  }
  res.jackknife_stderr = std::sqrt(var);

  if (replicates > 0) {
    double sum = 0.0;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
      Rng rng = make_rng(seed, "rewire", rep);
      IndexedEdges g = ie;
      std::set<std::pair<std::size_t, std::size_t>> present;
      if (simple)
        for (std::size_t e = 0; e < g.src.size(); ++e) present.emplace(g.src[e], g.dst[e]);
      const std::size_t E = g.src.size();
      for (std::size_t attempt = 0; attempt < 10 * E; ++attempt) {
        const std::size_t e1 = uniform_index(rng, E), e2 = uniform_index(rng, E);
        if (e1 == e2) continue;
        const std::size_t a = g.src[e1], b = g.dst[e1], c = g.src[e2], d = g.dst[e2];
        if (a == d || c == b) continue;
        if (simple) {
          if (present.contains({a, d}) || present.contains({c, b})) continue;
          present.erase({a, b});
          present.erase({c, d});
          present.emplace(a, d);
          present.emplace(c, b);
        }
        g.dst[e1] = d;
        g.dst[e2] = b;
      }
      sum += r_of(g);
    }
    res.rewired_r = sum / static_cast<double>(replicates);
  }
  return res;
}

namespace {

std::string fmt(double v) { return io::format_double(v); }


// Empirical CDF rows "doi\tattribution\tquantity\tvalue\tcdf".
void cdf_rows(std::string& out, const std::string& doi, const char* attribution, const char* quantity,
              std::vector<double> values) {
  if (values.empty()) return;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out += doi + '\t' + attribution + '\t' + quantity + '\t' + fmt(values[i]) + '\t' +
           fmt(static_cast<double>(i + 1) / n) + '\n';
  }
}

}  // namespace

std::map<std::string, std::string> analyze(const Inputs& in, const AnalysisConfig& config) {
  if (!in.store || !in.dyads || !in.model || !in.assignments) throw ConfigError("analyze: missing inputs");
  static const UserMetadata no_meta;
  static const Lexicon no_lexicon;
  const UserMetadata& meta = in.meta ? *in.meta : no_meta;
  const Lexicon& lexicon = in.lexicon ? *in.lexicon : no_lexicon;
  const auto& model = *in.model;
  const std::size_t n_doi = model.dois.size();
  const auto lists = to_lists(*in.assignments);

  std::vector<corpus::Message> retained;
  for (const auto& m : in.store->messages())
    if (lists.contains(m.id)) retained.push_back(m);
  const auto comm = build_comm_graph(retained);
  if (comm.arcs.empty()) throw DataError("analyze: no assigned messages");
  corpus::DyadIndex dyads;
  for (const auto& d : in.dyads->dyads) {
    corpus::Dyad r{d.users, {}};
    for (const auto& id : d.message_ids)
      if (lists.contains(id)) r.message_ids.push_back(id);
    if (!r.message_ids.empty()) dyads.dyads.push_back(std::move(r));
  }

  json j;
  j["doi_count"] = n_doi;
  j["full"] = {{"users", comm.user_count()},
               {"dyads", comm.dyad_count()},
               {"messages", comm.arcs.size()},
               {"reciprocity", reciprocity(comm.arcs)}};
  const auto share_hard = tie_share(dyads, lists, n_doi, false);
  const auto share_soft = tie_share(dyads, lists, n_doi, true);

  std::string fig3 = "doi\tattribution\tquantity\tvalue\tcdf\n";
  std::string fig6 = "doi\twealth\tpopulation\tcumulative_wealth\n";
  std::string fig7 = "graph\tr\tjackknife_stderr\trewired_r\n";
  auto assort = [&](const std::string& name, const std::vector<Arc>& arcs, std::uint64_t index) {
    json a;
    try {
      auto res = assortativity_report(edges_of(arcs, config.simple_graph), config.simple_graph,
                                      config.rewire_replicates, derive_seed(config.seed, "rewire", index));
      a = {{"r", res.r}, {"jackknife_stderr", res.jackknife_stderr}, {"rewired_r", res.rewired_r}, {"edges", res.edges}};
      fig7 += name + '\t' + fmt(res.r) + '\t' + fmt(res.jackknife_stderr) + '\t' + fmt(res.rewired_r) + '\n';
    } catch (const NumericalError& e) {
      a = {{"error", e.what()}};
    }
    return a;
  };

  j["dois"] = json::array();
  for (std::size_t d = 0; d < n_doi; ++d) {
    const std::string label = model.label_of(d);
    const auto sub = induce_subgraph(comm, lists, d, n_doi);
    json x;
    x["id"] = d;
    x["label"] = label;
    const auto cov = coverage(sub, comm);
    x["coverage"] = {{"nodes", cov.nodes}, {"dyads", cov.dyads}, {"messages", cov.messages}};
    x["reciprocity"] = reciprocity(sub.arcs);
    x["tie_share"] = {{"hard", share_hard[d]}, {"soft", share_soft[d]}};
    const auto st = strength(sub, *in.store, meta, lexicon);
    x["strength"] = {{"sigma_neighbors", st.sigma_neighbors}, {"sigma_groups", st.sigma_groups},
                     {"sigma_items", st.sigma_items},         {"conv_len", st.conv_len},
                     {"msg_len", st.msg_len},                 {"lexicon", st.lexicon},
                     {"kinship", st.kinship}};
    for (auto w : {Wealth::in_degree, Wealth::in_strength}) {
      const char* wname = w == Wealth::in_degree ? "in_degree" : "in_strength";
      if (sub.arcs.empty()) continue;
      const auto l = lorenz_gini(user_wealth(sub.arcs, w));
      x["gini"][wname] = l.gini;
      for (std::size_t i = 0; i < l.population.size(); ++i)
        fig6 += label + '\t' + wname + '\t' + fmt(l.population[i]) + '\t' + fmt(l.wealth[i]) + '\n';
    }
    x["assortativity"] = assort(label, sub.arcs, d);

    // Distributions under both attributions.
    for (bool soft : {false, true}) {
      std::map<corpus::UserPair, double> per_dyad;
      std::vector<double> lengths;
      for (const auto& a : comm.arcs) {
        const auto& l = lists.at(a.message_id);
        const bool member = soft ? std::any_of(l.begin(), l.end(), [&](const doi::DoiProb& p) { return p.doi == d; })
                             : top_doi(l) == d;
        if (!member) continue;
        per_dyad[corpus::UserPair::of(a.sender, a.recipient)] += 1.0;
        lengths.push_back(static_cast<double>(textprep::raw_tokens(in.store->get(a.message_id).text).size()));
      }
      std::vector<double> conv;
      for (const auto& [k, v] : per_dyad) conv.push_back(v);
      cdf_rows(fig3, label, soft ? "soft" : "hard", "conv_len", conv);
      cdf_rows(fig3, label, soft ? "soft" : "hard", "msg_len", lengths);
    }
    j["dois"].push_back(std::move(x));
  }
  j["full"]["assortativity"] = assort("full", comm.arcs, n_doi);
  if (!comm.arcs.empty()) {
    j["full"]["gini"]["in_degree"] = lorenz_gini(user_wealth(comm.arcs, Wealth::in_degree)).gini;
    j["full"]["gini"]["in_strength"] = lorenz_gini(user_wealth(comm.arcs, Wealth::in_strength)).gini;
  }

  std::string fig4 = "family\tx\tsupport\tdoi\tshare\n";
  const auto ev = evolution_curves(dyads, lists, n_doi, config.soft_tie_share);
  for (const auto* fam : {&ev.by_length, &ev.by_step}) {
    const char* name = fam == &ev.by_length ? "length" : "step";
    for (const auto& p : *fam)
      for (std::size_t d = 0; d < n_doi; ++d)
        fig4 += std::string(name) + '\t' + std::to_string(p.x) + '\t' + std::to_string(p.support) + '\t' +
                model.label_of(d) + '\t' + fmt(p.share[d]) + '\n';
  }

  std::string fig5 = "length\treciprocity\tsupport\tfitted\n";
  try {
    const auto rc = reciprocity_vs_length(dyads, *in.store);
    for (std::size_t i = 0; i < rc.length.size(); ++i)
      fig5 += std::to_string(rc.length[i]) + '\t' + fmt(rc.reciprocity[i]) + '\t' + std::to_string(rc.support[i]) +
              '\t' + fmt(rc.fit.intercept + rc.fit.slope * static_cast<double>(rc.length[i])) + '\n';
    j["reciprocity_vs_length"] = {{"slope", rc.fit.slope}, {"intercept", rc.fit.intercept}};
  } catch (const NumericalError& e) {
    j["reciprocity_vs_length"] = {{"error", e.what()}};
  }
  j["config"] = {{"tie_share", config.soft_tie_share ? "soft" : "hard"},
                 {"graph", config.simple_graph ? "simple" : "multigraph"},
                 {"wealth", config.wealth == Wealth::in_degree ? "in_degree" : "in_strength"},
                 {"rewire_replicates", config.rewire_replicates}};

  return {{"analysis.json", j.dump(2) + "\n"},
          {"fig3_distributions.tsv", fig3},
          {"fig4_evolution.tsv", fig4},
          {"fig5_reciprocity.tsv", fig5},
          {"fig6_lorenz.tsv", fig6},
          {"fig7_assortativity.tsv", fig7}};
}

}  // namespace doitk::netanalysis
