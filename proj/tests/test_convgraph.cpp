#include <doctest.h>

#include <algorithm>
#include <random>

#include "doitk/convgraph.hpp"
#include "doitk/error.hpp"

using namespace doitk;
using namespace doitk::convgraph;

namespace {

corpus::Message msg(const std::string& id, const std::string& from, const std::string& to, std::int64_t t) {
  return {id, from, to, t, "x"};
}

std::size_t count_transitions(std::vector<corpus::Message> ms) {
  corpus::MessageStore store(ms);
  return extract_transitions(corpus::build_dyads(store.messages()), store).size();
}

}  // namespace

TEST_CASE("extract_transitions") {
  CHECK(count_transitions({msg("a", "u", "v", 1), msg("b", "v", "u", 2)}) == 1);
  CHECK(count_transitions({msg("a", "u", "v", 1), msg("b", "u", "v", 2), msg("c", "v", "u", 3)}) == 1);
  CHECK(count_transitions({msg("a", "u", "v", 1), msg("b", "v", "u", 2), msg("c", "u", "v", 3)}) == 2);
  CHECK(count_transitions({msg("a", "u", "v", 1), msg("b", "u", "v", 2)}) == 0);

  std::vector<corpus::Message> ms{msg("a", "u", "v", 1), msg("b", "u", "v", 2), msg("c", "v", "u", 3),
                                  msg("d", "w", "u", 4), msg("e", "u", "w", 5)};
  corpus::MessageStore store(ms);
  auto t = extract_transitions(corpus::build_dyads(store.messages()), store);
  REQUIRE(t.size() == 2);
  CHECK(t[0].first == "b");
  CHECK(t[0].second == "c");
  CHECK(t[1].first == "d");
  CHECK(t[1].second == "e");
  CHECK(t[1].dyad == corpus::UserPair::of("w", "u"));
}

TEST_CASE("build_graph: product rule") {
  std::vector<Transition> t{{"x", "y", corpus::UserPair::of("u", "v")}};
  BucketMap b;
  b["x"] = {{2, 0.9}};
  b["y"] = {{5, 0.8}};
  auto g = build_graph(t, b, 6);
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(2, 5) == doctest::Approx(0.72));

  b["x"] = {{3, 1.0}};
  b["y"] = {{3, 1.0}};
  g = build_graph(t, b, 6);
  CHECK(g.edge_count() == 0);
  CHECK(g.total_weight() == 0.0);
  CHECK(g.transitions_used == 1);

  b["x"] = {{0, 0.6}, {1, 0.4}};
  b["y"] = {{2, 1.0}};
  g = build_graph(t, b, 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(0, 2) == doctest::Approx(0.6));
  CHECK(g.weight(1, 2) == doctest::Approx(0.4));
  CHECK(g.node_mass[0] == doctest::Approx(0.6));
  CHECK(g.node_mass[2] == doctest::Approx(1.0));
}

TEST_CASE("build_graph: missing assignments are skipped and counted") {
  std::vector<Transition> t{{"x", "y", corpus::UserPair::of("u", "v")}, {"y", "z", corpus::UserPair::of("u", "v")}};
  BucketMap b;
  b["x"] = {{0, 1.0}};
  b["y"] = {{1, 1.0}};
  auto g = build_graph(t, b, 2);
  CHECK(g.transitions_used == 1);
  CHECK(g.transitions_skipped == 1);
  CHECK(g.weight(0, 1) == 1.0);
}

TEST_CASE("build_graph: conservation and order independence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const std::size_t k = 6;
  BucketMap b;
  std::vector<Transition> t;
  for (int i = 0; i < 300; ++i) {
    std::vector<nmf::BucketProb> bp;
    for (std::size_t j = 0; j < k; ++j)
      if (u(rng) < 0.4) bp.push_back({j, u(rng)});
    if (bp.empty()) bp.push_back({static_cast<std::size_t>(i) % k, 1.0});
    b["m" + std::to_string(i)] = bp;
  }
  for (int i = 0; i < 1000; ++i)
    t.push_back({"m" + std::to_string(rng() % 300), "m" + std::to_string(rng() % 300), corpus::UserPair::of("a", "b")});

  // Independent accumulation.
  double expect = 0;
  for (const auto& tr : t)
    for (const auto& x : b[tr.first])
      for (const auto& y : b[tr.second])
        if (x.bucket != y.bucket) expect += x.probability * y.probability;

  auto g = build_graph(t, b, k);
  CHECK(g.total_weight() == doctest::Approx(expect).epsilon(1e-12));
  for (std::size_t i = 0; i < k; ++i) CHECK(g.weight(i, i) == 0.0);

  auto shuffled = t;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto g2 = build_graph(shuffled, b, k);
  CHECK(g.weight == g2.weight);
  CHECK(g.node_mass == g2.node_mass);
}

TEST_CASE("edges_tsv round trips") {
  std::vector<Transition> t{{"x", "y", corpus::UserPair::of("u", "v")}};
  BucketMap b;
  b["x"] = {{0, 0.6}, {1, 0.4}};
  b["y"] = {{2, 1.0}};
  auto g = build_graph(t, b, 3);
  auto text = edges_tsv(g);
  CHECK(text.rfind("src\tdst\tweight\n", 0) == 0);
  auto back = read_edges_tsv(text, 3);
  CHECK(back.weight == g.weight);
  auto nodes = nodes_tsv(g, {{"a", "b"}, {"c"}, {}});
  CHECK(nodes.rfind("bucket\tmessage_mass\ttop_terms\n", 0) == 0);
  CHECK(nodes.find("a | b") != std::string::npos);
}
