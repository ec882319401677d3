#include <doctest.h>

#include <random>
#include <set>

#include "doitk/community.hpp"
#include "doitk/error.hpp"

using namespace doitk;
using namespace doitk::community;

namespace {

using EdgeList = std::vector<std::tuple<std::size_t, std::size_t, double>>;

EdgeList clique(std::size_t from, std::size_t n, double w = 1.0) {
  EdgeList e;
  for (std::size_t i = from; i < from + n; ++i)
    for (std::size_t j = i + 1; j < from + n; ++j) e.emplace_back(i, j, w);
  return e;
}

EdgeList operator+(EdgeList a, const EdgeList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Same partition up to relabelling.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return compact(a) == compact(b);
}

std::vector<std::size_t> blocks(std::size_t count, std::size_t size) {
  std::vector<std::size_t> m;
  for (std::size_t c = 0; c < count; ++c) m.insert(m.end(), size, c);
  return m;
}

}  // namespace

TEST_CASE("symmetrize") {
  convgraph::ConversationGraph g;
  g.k = 3;
  g.weight = DenseMatrix(3, 3);
  g.weight(0, 1) = 2.0;
  g.weight(1, 0) = 3.0;
  g.weight(1, 2) = 1.5;
  auto u = symmetrize(g);
  CHECK(u.size() == 3);
  CHECK(u.adj(0, 1) == 5.0);
  CHECK(u.adj(1, 0) == 5.0);
  CHECK(u.adj(2, 1) == 1.5);
  CHECK(u.edge_count() == 2);
  CHECK(u.total_weight() == 6.5);

  convgraph::ConversationGraph empty;
  empty.k = 4;
  empty.weight = DenseMatrix(4, 4);
  auto e = symmetrize(empty);
  CHECK(e.size() == 4);
  CHECK(e.edge_count() == 0);
  CHECK_THROWS_AS(spinglass(e, SpinglassConfig{}), DataError);
}

TEST_CASE("modularity closed forms") {
  auto g = from_edges(10, clique(0, 5) + clique(5, 5));
  CHECK(modularity(g, std::vector<std::size_t>(10, 0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(modularity(g, blocks(2, 5)) == doctest::Approx(0.5).epsilon(1e-12));

  // Clique split into halves: Q = -1 / (2 (n - 1)).
  const std::size_t n = 12;
  auto k = from_edges(n, clique(0, n));
  std::mt19937_64 rng(3);
  double total = 0;
  for (int s = 0; s < 20; ++s) {
    std::vector<std::size_t> m = blocks(2, n / 2);
    std::shuffle(m.begin(), m.end(), rng);
    const double q = modularity(k, m);
    CHECK(q == doctest::Approx(-1.0 / (2.0 * (n - 1))).epsilon(1e-12));
    total += q;
  }
  CHECK(total / 20 < 0.01);
  CHECK_THROWS_AS(modularity(from_edges(3, {}), {0, 0, 0}), NumericalError);
}

TEST_CASE("hamiltonian matches a direct sum") {
  auto g = from_edges(4, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 3.0}});
  std::vector<std::size_t> m{0, 0, 1, 1};
  // s = (2, 3, 4, 3), S = 6.
  const double s[4] = {2, 3, 4, 3};
  double expect = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (m[i] == m[j]) expect -= g.adj(i, j) - s[i] * s[j] / 12.0;
  CHECK(hamiltonian(g, m, 1.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("spinglass: two cliques joined by a unit edge") {
  auto g = from_edges(10, clique(0, 5) + clique(5, 5) + EdgeList{{4, 5, 1.0}});
  SpinglassConfig cfg;
  cfg.seed = 1;
  auto p = spinglass(g, cfg);
  CHECK(p.count == 2);
  CHECK(same_partition(p.membership, blocks(2, 5)));
  CHECK(p.final_sweep_uphill_moves == 0);
  for (std::size_t i = 1; i < p.final_sweep_energy.size(); ++i)
    CHECK(p.final_sweep_energy[i] <= p.final_sweep_energy[i - 1]);
  CHECK(p.hamiltonian == doctest::Approx(hamiltonian(g, p.membership, cfg.gamma)).epsilon(1e-9));

  auto q = spinglass(g, cfg);
  CHECK(p.membership == q.membership);
  CHECK(p.hamiltonian == q.hamiltonian);
}

TEST_CASE("spinglass: disconnected components are never merged") {
  auto g = from_edges(11, clique(0, 5) + clique(5, 5));
  for (std::uint64_t s = 0; s < 5; ++s) {
    SpinglassConfig cfg;
    cfg.seed = s;
    auto p = spinglass(g, cfg);
    CHECK(p.count == 3);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 5; j < 11; ++j) CHECK(p.membership[i] != p.membership[j]);
    CHECK(p.count <= cfg.spins_max);
  }
}

TEST_CASE("spinglass: three planted blocks") {
  int exact = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::mt19937_64 rng(500 + trial);
    std::bernoulli_distribution inter(0.15);
    EdgeList e = clique(0, 8) + clique(8, 8) + clique(16, 8);
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = i + 1; j < 24; ++j)
        if (i / 8 != j / 8 && inter(rng)) e.emplace_back(i, j, 0.05);
    SpinglassConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    auto p = spinglass(from_edges(24, e), cfg);
    if (p.count == 3 && same_partition(p.membership, blocks(3, 8))) ++exact;
    CHECK(p.final_sweep_uphill_moves == 0);
  }
  MESSAGE("exact recovery in " << exact << "/20 trials");
  CHECK(exact >= 18);
}

TEST_CASE("spinglass: config validation") {
  SpinglassConfig cfg;
  cfg.stop_temp = 2.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SpinglassConfig{};
  cfg.cooling = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("compact and partition TSV") {
  CHECK(compact({4, 4, 1, 7, 1}) == std::vector<std::size_t>{0, 0, 1, 2, 1});
  Partition p;
  p.membership = {0, 1, 0};
  p.count = 2;
  auto text = partition_tsv(p);
  CHECK(text.rfind("bucket\tcommunity\n", 0) == 0);
  auto back = read_partition_tsv(text);
  CHECK(back.membership == p.membership);
  CHECK(back.count == 2);
}
