#include "doitk/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/rng.hpp"

namespace doitk::community {

std::size_t UndirectedGraph::edge_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (adj(i, j) > 0.0) ++c;
  return c;
}

double UndirectedGraph::total_weight() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) s += adj(i, j);
  return s;
}

UndirectedGraph symmetrize(const convgraph::ConversationGraph& g) {
  UndirectedGraph u{DenseMatrix(g.k, g.k)};
  for (std::size_t i = 0; i < g.k; ++i)
    for (std::size_t j = 0; j < g.k; ++j)
      if (i != j) u.adj(i, j) = g.weight(i, j) + g.weight(j, i);
  return u;
}

UndirectedGraph from_edges(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  UndirectedGraph u{DenseMatrix(n, n)};
  for (const auto& [i, j, w] : edges) {
    if (i >= n || j >= n || i == j || !(w >= 0.0)) throw DataError("from_edges: invalid edge");
    u.adj(i, j) += w;
    u.adj(j, i) += w;
  }
  return u;
}

void SpinglassConfig::validate() const {
  if (!(gamma >= 0.0)) throw ConfigError("spinglass: gamma must be >= 0");
  if (spins_max < 1) throw ConfigError("spinglass: spins_max must be >= 1");
  if (!(stop_temp > 0.0 && stop_temp < start_temp)) throw ConfigError("spinglass: require 0 < stop_temp < start_temp");
  if (!(cooling > 0.0 && cooling < 1.0)) throw ConfigError("spinglass: cooling must lie in (0, 1)");
  if (sweeps_per_temp < 1) throw ConfigError("spinglass: sweeps_per_temp must be >= 1");
  if (restarts < 1) throw ConfigError("spinglass: restarts must be >= 1");
}

namespace {

std::vector<double> strengths(const UndirectedGraph& g) {
  std::vector<double> s(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s[i] += g.adj(i, j);
  return s;
}

struct Annealer {
  const UndirectedGraph& g;  // normalised weights
  double gamma;
  std::size_t q;
  std::vector<double> s;
  double two_s = 0.0;
  std::vector<std::size_t> spin;
  std::vector<double> K;       // strength per spin
  std::vector<double> w_to;    // scratch

  Annealer(const UndirectedGraph& graph, double gm, std::size_t spins)
      : g(graph), gamma(gm), q(spins), s(strengths(graph)), spin(graph.size(), 0), K(spins, 0.0), w_to(spins, 0.0) {
    for (double x : s) two_s += x;
  }

  void set(const std::vector<std::size_t>& init) {
    spin = init;
    std::fill(K.begin(), K.end(), 0.0);
    for (std::size_t i = 0; i < spin.size(); ++i) K[spin[i]] += s[i];
  }

  void fill_w_to(std::size_t i) {
    std::fill(w_to.begin(), w_to.end(), 0.0);
    const double* row = g.adj.row(i);
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i && row[j] > 0.0) w_to[spin[j]] += row[j];
  }

  // Energy contribution of node i in spin c, with i removed from K.
  double local_energy(std::size_t i, std::size_t c) const {
    const double k_other = K[c] - (spin[i] == c ? s[i] : 0.0);
    return -(w_to[c] - gamma * s[i] * k_other / two_s);
  }

  void move(std::size_t i, std::size_t c) {
    K[spin[i]] -= s[i];
    spin[i] = c;
    K[c] += s[i];
  }

  void heat_bath_sweep(double temp, Rng& rng, std::vector<double>& prob) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (s[i] <= 0.0) continue;
      fill_w_to(i);
      double emin = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < q; ++c) {
        prob[c] = local_energy(i, c);
        emin = std::min(emin, prob[c]);
      }
      double total = 0.0;
      for (std::size_t c = 0; c < q; ++c) {
        prob[c] = std::exp(-(prob[c] - emin) / temp);
        total += prob[c];
      }
      double r = uniform01(rng) * total;
      std::size_t pick = q - 1;
      for (std::size_t c = 0; c < q; ++c) {
        r -= prob[c];
        if (r < 0.0) {
          pick = c;
          break;
        }
      }
      move(i, pick);
    }
  }

  // One greedy pass; returns the number of accepted moves.
  std::size_t greedy_pass(double tol, std::size_t& uphill) {
    std::size_t moves = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (s[i] <= 0.0) continue;
      fill_w_to(i);
      const std::size_t cur = spin[i];
      const double e_cur = local_energy(i, cur);
      std::size_t best = cur;
      double e_best = e_cur;
      for (std::size_t c = 0; c < q; ++c) {
        const double e = local_energy(i, c);
        if (e < e_best) {
          e_best = e;
          best = c;
        }
      }
      const double delta = e_best - e_cur;
      if (best != cur && delta < -tol) {
        if (delta > 0.0) ++uphill;
        move(i, best);
        ++moves;
      }
    }
    return moves;
  }

  // Splits every spin whose nodes are not connected; each split strictly
  // lowers the energy when gamma > 0. Returns true if anything changed.
  bool split_components() {
    const std::size_t n = g.size();
    std::vector<std::size_t> comp(n, n);
    std::vector<unsigned char> used(q, 0);
    std::vector<std::vector<std::size_t>> parts;
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i] <= 0.0 || comp[i] != n) continue;
      std::vector<std::size_t> stack{i}, members;
      comp[i] = parts.size();
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        members.push_back(u);
        for (std::size_t v = 0; v < n; ++v)
          if (comp[v] == n && spin[v] == spin[u] && g.adj(u, v) > 0.0) {
            comp[v] = parts.size();
            stack.push_back(v);
          }
      }
      parts.push_back(std::move(members));
    }
    bool changed = false;
    std::vector<std::size_t> next = spin;
    for (const auto& part : parts) {
      const std::size_t sp = spin[part.front()];
      if (!used[sp]) {
        used[sp] = 1;
        continue;
      }
      std::size_t free_spin = q;
      for (std::size_t c = 0; c < q; ++c)
        if (!used[c] && K[c] == 0.0) {
          free_spin = c;
          break;
        }
      if (free_spin == q) continue;
      used[free_spin] = 1;
      for (std::size_t u : part) next[u] = free_spin;
      changed = true;
      set(next);
    }
    return changed;
  }
};

}  // namespace

double hamiltonian(const UndirectedGraph& g, const std::vector<std::size_t>& membership, double gamma) {
  const auto s = strengths(g);
  double two_s = 0.0;
  for (double x : s) two_s += x;
  if (two_s <= 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (membership[i] == membership[j]) h -= g.adj(i, j) - gamma * s[i] * s[j] / two_s;
  return h;
}

std::vector<std::size_t> compact(const std::vector<std::size_t>& membership) {
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(membership.size());
  for (std::size_t i = 0; i < membership.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(membership[i], ids.size());
    out[i] = it->second;
  }
  return out;
}

Partition spinglass(const UndirectedGraph& g, const SpinglassConfig& config) {
  config.validate();
  const std::size_t n = g.size();
  double total = 0.0;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adj(i, j) < 0.0 || !std::isfinite(g.adj(i, j))) throw DataError("spinglass: invalid edge weight");
      if (g.adj(i, j) > 0.0) {
        total += g.adj(i, j);
        ++edges;
      }
    }
  if (edges == 0) throw DataError("spinglass: graph has no edges");

  UndirectedGraph norm{g.adj};
  const double mean_w = total / static_cast<double>(edges);
  for (auto& x : norm.adj.data()) x /= mean_w;

  Partition best;
  bool have = false;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    const std::uint64_t seed = derive_seed(config.seed, "spinglass", r);
    Rng rng(seed);
    Annealer a(norm, config.gamma, config.spins_max);
    std::vector<std::size_t> init(n);
    for (auto& x : init) x = uniform_index(rng, config.spins_max);
    a.set(init);
    std::vector<double> prob(config.spins_max);
    for (double t = config.start_temp; t > config.stop_temp; t *= config.cooling)
      for (std::size_t sw = 0; sw < config.sweeps_per_temp; ++sw) a.heat_bath_sweep(t, rng, prob);

    Partition p;
    p.seed = seed;
    const double tol = 1e-12;
    for (;;) {
      std::size_t moves = 0;
      do {
        moves = a.greedy_pass(tol, p.final_sweep_uphill_moves);
        p.final_sweep_energy.push_back(hamiltonian(g, a.spin, config.gamma));
      } while (moves > 0);
      if (config.gamma <= 0.0 || !a.split_components()) break;
      p.final_sweep_energy.push_back(hamiltonian(g, a.spin, config.gamma));
    }

    // Isolated nodes each get their own community.
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = a.s[i] > 0.0 ? a.spin[i] : config.spins_max + i;
    p.membership = compact(labels);
    p.count = 0;
    for (auto c : p.membership) p.count = std::max(p.count, c + 1);
    p.hamiltonian = hamiltonian(g, p.membership, config.gamma);
    if (!have || p.hamiltonian < best.hamiltonian) {
      best = std::move(p);
      have = true;
    }
  }
  return best;
}

double modularity(const UndirectedGraph& g, const std::vector<std::size_t>& membership) {
  if (membership.size() != g.size()) throw DataError("modularity: partition does not cover the graph");
  const double S = g.total_weight();
  if (!(S > 0.0)) throw NumericalError("modularity: zero total weight");
  std::size_t c = 0;
  for (auto m : membership) c = std::max(c, m + 1);
  std::vector<double> intra(c, 0.0), strength(c, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      strength[membership[i]] += g.adj(i, j);
      if (j > i && membership[i] == membership[j]) intra[membership[i]] += g.adj(i, j);
    }
  double q = 0.0;
  for (std::size_t x = 0; x < c; ++x) {
    const double a = strength[x] / (2.0 * S);
    q += intra[x] / S - a * a;
  }
  return q;
}

std::string partition_tsv(const Partition& p) {
  std::string out = "bucket\tcommunity\n";
  for (std::size_t i = 0; i < p.membership.size(); ++i)
    out += std::to_string(i) + '\t' + std::to_string(p.membership[i]) + '\n';
  return out;
}

Partition read_partition_tsv(std::string_view text) {
  Partition p;
  auto lines = io::split(text, '\n');
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (io::trim(lines[ln]).empty()) continue;
    auto f = io::split(lines[ln], '\t');
    if (f.size() != 2) throw DataError("partition line " + std::to_string(ln + 1) + ": expected 2 fields");
    std::size_t b = 0, c = 0;
    try {
      b = std::stoul(f[0]);
      c = std::stoul(f[1]);
    } catch (const std::logic_error&) {
      throw DataError("partition line " + std::to_string(ln + 1) + ": bad number");
    }
    if (b != p.membership.size()) throw DataError("partition line " + std::to_string(ln + 1) + ": buckets out of order");
    p.membership.push_back(c);
    p.count = std::max(p.count, c + 1);
  }
  return p;
}

}  // namespace doitk::community
