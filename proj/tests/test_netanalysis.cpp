#include <doctest.h>

#include <cmath>
#include <random>

#include "doitk/error.hpp"
#include "doitk/netanalysis.hpp"

using namespace doitk;
using namespace doitk::netanalysis;

namespace {

corpus::Message msg(const std::string& id, const std::string& from, const std::string& to, std::int64_t t,
                    std::string text = "x") {
  return {id, from, to, t, std::move(text)};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], syy += y[i] * y[i], sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

double brute_assortativity(const std::vector<Edge>& edges) {
  std::map<std::string, double> indeg;
  for (const auto& e : edges) indeg[e.target] += 1;
  std::vector<double> x, y;
  for (const auto& e : edges) {
    x.push_back(indeg[e.source]);
    y.push_back(indeg[e.target]);
  }
  return pearson(x, y);
}

DoiLists lists_of(std::initializer_list<std::pair<const char*, std::vector<doi::DoiProb>>> l) {
  DoiLists out;
  for (const auto& [id, v] : l) out[id] = v;
  return out;
}

}  // namespace

TEST_CASE("induce_subgraph and coverage") {
  std::vector<corpus::Message> ms{msg("m1", "a", "b", 1), msg("m2", "b", "a", 2), msg("m3", "a", "c", 3)};
  auto comm = build_comm_graph(ms);
  CHECK(comm.user_count() == 3);
  CHECK(comm.dyad_count() == 2);
  auto all0 = lists_of({{"m1", {{0, 1.0}}}, {"m2", {{0, 1.0}}}, {"m3", {{0, 1.0}}}});
  auto full = induce_subgraph(comm, all0, 0, 2);
  CHECK(full.arcs.size() == 3);
  auto c = coverage(full, comm);
  CHECK(c.nodes == 1.0);
  CHECK(c.dyads == 1.0);
  CHECK(c.messages == 1.0);
  auto empty = coverage(induce_subgraph(comm, all0, 1, 2), comm);
  CHECK(empty.nodes == 0.0);
  CHECK(empty.messages == 0.0);

  auto multi = lists_of({{"m1", {{0, 0.6}, {1, 0.4}}}, {"m2", {{0, 1.0}}}, {"m3", {{1, 1.0}}}});
  auto s0 = induce_subgraph(comm, multi, 0, 2), s1 = induce_subgraph(comm, multi, 1, 2);
  CHECK(s0.arcs.size() == 2);
  CHECK(s1.arcs.size() == 2);
  auto c1 = coverage(s1, comm);
  CHECK(c1.nodes == 1.0);
  CHECK(c1.dyads == 1.0);
  CHECK(c1.messages == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(induce_subgraph(comm, multi, 2, 2), ConfigError);
}

TEST_CASE("reciprocity") {
  CHECK(dyad_reciprocity(1, 1) == 1.0);
  CHECK(dyad_reciprocity(3, 1) == doctest::Approx(1.0 / 3));
  CHECK(dyad_reciprocity(0, 4) == 0.0);
  std::vector<Arc> arcs{{"1", "a", "b", 1}, {"2", "a", "b", 2}, {"3", "a", "b", 3}, {"4", "b", "a", 4},
                        {"5", "c", "a", 5}, {"6", "a", "c", 6}};
  CHECK(reciprocity(arcs) == doctest::Approx((1.0 / 3 + 1.0) / 2));
}

TEST_CASE("tie_share") {
  std::vector<corpus::Message> ms{msg("m1", "a", "b", 1), msg("m2", "b", "a", 2), msg("m3", "a", "b", 3),
                                  msg("m4", "b", "a", 4), msg("m5", "c", "d", 5)};
  auto dyads = corpus::build_dyads(ms);
  auto lists = lists_of({{"m1", {{0, 0.9}}}, {"m2", {{0, 0.7}, {1, 0.3}}}, {"m3", {{1, 1.0}}},
                         {"m4", {{1, 0.8}}}, {"m5", {{0, 1.0}}}});
  auto hard = tie_share(dyads, lists, 2);
  CHECK(hard[0] == doctest::Approx((0.5 + 1.0) / 2));
  CHECK(hard[1] == doctest::Approx((0.5 + 0.0) / 2));
  CHECK(hard[0] + hard[1] == doctest::Approx(1.0));
  auto soft = tie_share(dyads, lists, 2, true);
  CHECK(soft[0] == doctest::Approx(((1.0 + 0.7) / 4 + 1.0) / 2));
}

TEST_CASE("jaccard") {
  CHECK(jaccard({"a", "b"}, {"a", "b"}) == 1.0);
  CHECK(jaccard({"a"}, {"b"}) == 0.0);
  CHECK(jaccard({"a", "b", "c"}, {"b", "c", "d"}) == 0.5);
  CHECK(jaccard({}, {}) == 0.0);
}

TEST_CASE("lexicon_ratio") {
  auto lex = parse_lexicon("[emotion]\nhappy\nsad\n\n[intimacy]\nlove*\n");
  CHECK(lex.at("intimacy") == std::vector<std::string>{"love*"});
  CHECK(lexicon_ratio(std::vector<std::string>{"happy sad table"}, lex, "emotion") == doctest::Approx(2.0 / 3));
  CHECK(lexicon_ratio(std::vector<std::string>{"Happy SAD"}, lex, "emotion") == 1.0);
  CHECK(lexicon_ratio(std::vector<std::string>{"chair table"}, lex, "emotion") == 0.0);
  CHECK(lexicon_ratio(std::vector<std::string>{"lovely loved glove"}, lex, "intimacy") == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(lexicon_ratio(std::vector<std::string>{"x"}, lex, "anger"), ConfigError);
}

TEST_CASE("metadata parsing and strength") {
  auto n = parse_membership_csv("user,value\na,x\na,y\nb,y\n");
  CHECK(n.at("a") == std::set<std::string>{"x", "y"});
  auto kin = parse_kinship_csv("user_a,user_b,relation\nb,a,sibling\n");
  CHECK(kin.count(corpus::UserPair::of("a", "b")) == 1);

  std::vector<corpus::Message> ms{msg("m1", "a", "b", 1, "happy day"), msg("m2", "b", "a", 2, "sad")};
  corpus::MessageStore store(ms);
  auto comm = build_comm_graph(ms);
  auto lists = lists_of({{"m1", {{0, 1.0}}}, {"m2", {{0, 1.0}}}});
  UserMetadata meta;
  meta.neighbors = n;
  meta.kin = kin;
  auto lex = parse_lexicon("[emotion]\nhappy\nsad\n");
  auto row = strength(induce_subgraph(comm, lists, 0, 1), store, meta, lex);
  CHECK(row.sigma_neighbors == 0.5);
  CHECK(row.conv_len == 2.0);
  CHECK(row.msg_len == 1.5);
  CHECK(row.lexicon.at("emotion") == doctest::Approx(2.0 / 3));
  CHECK(row.kinship == 1.0);
}

TEST_CASE("evolution_curves") {
  std::vector<corpus::Message> ms;
  auto lists = DoiLists{};
  // Three dyads; step 1 is always DoI 0.
  int id = 0;
  for (int d = 0; d < 3; ++d)
    for (int s = 0; s <= d + 1; ++s) {
      const std::string mid = "m" + std::to_string(id++);
      ms.push_back(msg(mid, s % 2 ? "v" : "u" + std::to_string(d), s % 2 ? "u" + std::to_string(d) : "v", id));
      lists[mid] = {{s == 0 ? 0u : 1u + static_cast<std::size_t>(s % 2), 1.0}};
    }
  auto c = evolution_curves(corpus::build_dyads(ms), lists, 3);
  REQUIRE(!c.by_step.empty());
  CHECK(c.by_step[0].x == 1);
  CHECK(c.by_step[0].support == 3);
  CHECK(c.by_step[0].share[0] == 1.0);
  for (const auto& p : c.by_step) {
    double s = 0;
    for (double v : p.share) s += v;
    CHECK(s == doctest::Approx(1.0));
  }
  REQUIRE(c.by_length.size() == 3);
  CHECK(c.by_length[0].x == 2);
  CHECK(c.by_length[0].share[0] == 0.5);
}

TEST_CASE("least_squares and reciprocity_vs_length") {
  auto f = least_squares({1, 2}, {0, 1});
  CHECK(f.slope == doctest::Approx(1.0));
  CHECK(f.intercept == doctest::Approx(-1.0));
  auto c = least_squares({1, 2, 3, 4}, {1, 1, 1, 1});
  CHECK(c.slope == doctest::Approx(0.0));
  CHECK(c.intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(least_squares({2, 2}, {0, 1}), NumericalError);

  std::vector<corpus::Message> ms{msg("m1", "a", "b", 1), msg("m2", "c", "d", 2), msg("m3", "d", "c", 3)};
  corpus::MessageStore store(ms);
  auto r = reciprocity_vs_length(corpus::build_dyads(ms), store);
  CHECK(r.length == std::vector<std::size_t>{1, 2});
  CHECK(r.reciprocity == std::vector<double>{0.0, 1.0});
  CHECK(r.fit.slope == doctest::Approx(1.0));
  CHECK(r.fit.intercept == doctest::Approx(-1.0));
}

TEST_CASE("Lorenz and Gini") {
  auto u = lorenz_gini({2, 2, 2, 2});
  CHECK(u.gini == doctest::Approx(0.0));
  for (std::size_t i = 0; i < u.population.size(); ++i) CHECK(u.wealth[i] == doctest::Approx(u.population[i]));
  auto l = lorenz_gini({0, 0, 0, 1});
  CHECK(l.gini == doctest::Approx(0.75));
  CHECK(gini_pairwise({0, 0, 0, 1}) == doctest::Approx(0.75));
  CHECK(l.population.front() == 0.0);
  CHECK(l.wealth.front() == 0.0);
  CHECK(l.population.back() == 1.0);
  CHECK(l.wealth.back() == 1.0);
  CHECK_THROWS_AS(lorenz_gini({0, 0}), DataError);
  CHECK_THROWS_AS(lorenz_gini({}), DataError);

  std::mt19937_64 rng(5);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> w(1 + rng() % 50);
    for (auto& v : w) v = e(rng);
    auto lz = lorenz_gini(w);
    CHECK(gini_pairwise(w) == doctest::Approx(gini_lorenz_area(lz)).epsilon(1e-9));
    CHECK(lz.gini == doctest::Approx(gini_pairwise(w)).epsilon(1e-9));
    for (std::size_t i = 1; i < lz.wealth.size(); ++i) CHECK(lz.wealth[i] >= lz.wealth[i - 1]);
  }
}

TEST_CASE("user_wealth") {
  std::vector<Arc> arcs{{"1", "a", "b", 1}, {"2", "c", "b", 2}, {"3", "b", "a", 3}, {"4", "a", "b", 4}};
  auto deg = user_wealth(arcs, Wealth::in_degree);
  auto str = user_wealth(arcs, Wealth::in_strength);
  std::sort(deg.begin(), deg.end());
  std::sort(str.begin(), str.end());
  CHECK(deg == std::vector<double>{0, 1, 2});
  CHECK(str == std::vector<double>{0, 1, 3});
}

TEST_CASE("assortativity") {
  std::vector<Edge> fixture{{"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "c"}, {"d", "a"}};
  CHECK(assortativity(fixture) == doctest::Approx(brute_assortativity(fixture)).epsilon(1e-12));
  std::vector<Edge> star{{"h", "a"}, {"h", "b"}, {"a", "h"}, {"b", "h"}, {"c", "h"}, {"d", "h"}};
  CHECK(assortativity(star) == doctest::Approx(brute_assortativity(star)).epsilon(1e-12));
  CHECK(assortativity(star) < 0);
  CHECK_THROWS_AS(assortativity({{"a", "b"}, {"b", "a"}}), NumericalError);

  std::vector<Arc> arcs{{"1", "a", "b", 1}, {"2", "a", "b", 2}, {"3", "b", "c", 3}};
  CHECK(edges_of(arcs, false).size() == 3);
  CHECK(edges_of(arcs, true).size() == 2);
}

TEST_CASE("assortativity_report: jackknife shrinks with duplication") {
  std::mt19937_64 rng(12);
  std::vector<Edge> base;
  for (int i = 0; i < 40; ++i) {
    const auto s = "u" + std::to_string(rng() % 15), t = "u" + std::to_string(rng() % 15);
    if (s != t) base.push_back({s, t});
  }
  auto dup = [&](int times) {
    std::vector<Edge> e;
    for (int r = 0; r < times; ++r) e.insert(e.end(), base.begin(), base.end());
    return e;
  };
  auto r1 = assortativity_report(dup(1), false, 5, 1);
  auto r2 = assortativity_report(dup(2), false, 5, 1);
  auto r4 = assortativity_report(dup(4), false, 5, 1);
  CHECK(r1.jackknife_stderr >= 0);
  CHECK(r2.jackknife_stderr < r1.jackknife_stderr);
  CHECK(r4.jackknife_stderr < r2.jackknife_stderr);
  CHECK(r1.r == doctest::Approx(r4.r).epsilon(1e-9));
  auto again = assortativity_report(dup(1), false, 5, 1);
  CHECK(again.rewired_r == r1.rewired_r);
  CHECK(r1.edges == base.size());
}
