#include <doctest.h>

#include <cmath>

#include "doitk/convgraph.hpp"
#include "doitk/corpus.hpp"
#include "doitk/error.hpp"
#include "doitk/eval.hpp"
#include "doitk/synth.hpp"
#include "doitk/textprep.hpp"

using namespace doitk;
using namespace doitk::synth;

namespace {

SynthSpec small(std::uint64_t seed) {
  SynthSpec s;
  s.users = 1000;
  s.dyads = 1500;
  s.seed = seed;
  return s;
}

// Index ranges of each dyad in generation order.
std::vector<std::pair<std::size_t, std::size_t>> dyad_runs(const SynthCorpus& c) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < c.messages.size(); ++i) {
    const auto p = corpus::UserPair::of(c.messages[i].sender, c.messages[i].recipient);
    if (runs.empty() || p != corpus::UserPair::of(c.messages[runs.back().first].sender,
                                                  c.messages[runs.back().first].recipient))
      runs.push_back({i, i + 1});
    else
      runs.back().second = i + 1;
  }
  return runs;
}

}  // namespace

TEST_CASE("generate is deterministic and round trips through the loader") {
  auto a = generate(small(3)), b = generate(small(3));
  CHECK(a.messages == b.messages);
  CHECK(a.domain == b.domain);
  auto c = generate(small(4));
  CHECK(c.messages != a.messages);

  auto loaded = corpus::parse_messages(corpus::to_jsonl(a.messages), corpus::Format::jsonl, {});
  CHECK(loaded.messages == a.messages);
  CHECK(loaded.malformed_skipped == 0);

  auto truth = eval::parse_ground_truth(labels_csv(a));
  CHECK(truth.labels.size() == a.messages.size());
  CHECK(truth.alphabet() == eval::LabelSet{"status", "support", "knowledge"});
  CHECK(a.messages.front().id == "m000001");
  CHECK(a.messages.front().sender.size() == 5);
  CHECK(manifest_json(small(3), a).find("\"crossover_step\"") != std::string::npos);
}

TEST_CASE("tokens come from the planted domain pools") {
  auto s = small(1);
  s.overlap = 0.0;
  auto c = generate(s);
  for (std::size_t i = 0; i < c.messages.size(); ++i) {
    const std::string prefix = "d" + std::to_string(c.domain[i]) + "s";
    for (const auto& t : textprep::raw_tokens(c.messages[i].text)) CHECK(t.rfind(prefix, 0) == 0);
  }
  s.overlap = 0.2;
  c = generate(s);
  std::size_t leaked = 0, total = 0;
  for (std::size_t i = 0; i < c.messages.size(); ++i) {
    const std::string prefix = "d" + std::to_string(c.domain[i]) + "s";
    for (const auto& t : textprep::raw_tokens(c.messages[i].text)) {
      ++total;
      leaked += t.rfind(prefix, 0) != 0;
    }
  }
  const double rate = double(leaked) / double(total);
  CHECK(std::abs(rate - 0.2) < 3 * std::sqrt(0.2 * 0.8 / double(total)) + 0.005);
}

TEST_CASE("rho = 1 gives single-domain dyads") {
  auto s = small(2);
  s.rho = 1.0;
  s.overlap = 0.0;
  auto c = generate(s);
  for (auto [b, e] : dyad_runs(c))
    for (std::size_t i = b; i < e; ++i) CHECK(c.domain[i] == c.domain[b]);
}

TEST_CASE("start-domain marginals match the configured weights within 3 sigma") {
  auto s = small(5);
  s.dyads = 5000;
  s.users = 3000;
  s.start_weights = {0.5, 0.3, 0.2};
  auto c = generate(s);
  auto runs = dyad_runs(c);
  REQUIRE(runs.size() == s.dyads);
  std::vector<double> count(3, 0.0);
  for (auto [b, e] : runs) count[static_cast<std::size_t>(c.domain[b])] += 1;
  for (std::size_t d = 0; d < 3; ++d) {
    const double p = s.start_weights[d], n = double(s.dyads);
    CHECK(std::abs(count[d] / n - p) < 3 * std::sqrt(p * (1 - p) / n));
  }
}

TEST_CASE("conversation length has the configured mean") {
  for (double mu : {1.75, 2.0, 4.0}) {
    auto s = small(6);
    s.dyads = 5000;
    s.users = 3000;
    s.mean_conv_len = mu;
    auto c = generate(s);
    auto dyads = corpus::build_dyads(c.messages);
    auto stats = corpus::corpus_stats(c.messages, dyads, [](std::string_view t) { return textprep::raw_tokens(t).size(); });
    CHECK(dyads.dyads.size() == s.dyads);
    CHECK(std::abs(stats.conv_len_mean - mu) < 0.05 * mu);
  }
}

TEST_CASE("rho = 0.5 with two domains balances intra and inter transitions") {
  auto s = small(7);
  s.domains = 2;
  s.rho = 0.5;
  s.dyads = 4000;
  s.users = 3000;
  auto c = generate(s);
  corpus::MessageStore store(c.messages);
  std::unordered_map<std::string, int> dom;
  for (std::size_t i = 0; i < c.messages.size(); ++i) dom[c.messages[i].id] = c.domain[i];
  double intra = 0, inter = 0;
  for (const auto& t : convgraph::extract_transitions(corpus::build_dyads(store.messages()), store))
    (dom[t.first] == dom[t.second] ? intra : inter) += 1;
  CHECK(std::abs(intra - inter) / std::max(intra, inter) < 0.10);
}

TEST_CASE("planted step distribution decays for status-first starts") {
  SynthSpec s;
  s.start_weights = {0.8, 0.1, 0.1};
  s.switch_weights = {0.1, 0.45, 0.45};
  s.rho = 0.6;
  auto dist = planted_step_distribution(s, 12);
  for (std::size_t n = 1; n < dist.size(); ++n) CHECK(dist[n][0] < dist[n - 1][0]);
  for (const auto& p : dist) {
    double t = 0;
    for (double v : p) t += v;
    CHECK(t == doctest::Approx(1.0));
  }
  const auto x = planted_crossover(s);
  REQUIRE(x > 1);
  CHECK(dist[x - 1][0] < std::max(dist[x - 1][1], dist[x - 1][2]));
  CHECK(dist[x - 2][0] >= std::max(dist[x - 2][1], dist[x - 2][2]));
}

TEST_CASE("junk messages and stopword noise") {
  auto s = small(8);
  s.oov_fraction = 0.1;
  s.stopword_noise = true;
  auto c = generate(s);
  std::size_t junk = 0;
  for (int d : c.domain) junk += d < 0;
  CHECK(std::abs(double(junk) / double(c.domain.size()) - 0.1) < 0.02);
  CHECK(!c.stopwords.empty());
  CHECK(labels_csv(c).find(",\n") != std::string::npos);
}

TEST_CASE("status hubs concentrate status traffic") {
  auto s = small(9);
  s.status_hubs = 10;
  s.users = 2000;
  auto c = generate(s);
  for (auto [b, e] : dyad_runs(c)) {
    if (c.domain[b] != 0) continue;
    const auto& m = c.messages[b];
    const bool hub = std::stoi(m.sender.substr(1)) <= 10 || std::stoi(m.recipient.substr(1)) <= 10;
    CHECK(hub);
  }
}

TEST_CASE("validation") {
  SynthSpec s;
  s.domains = 1;
  CHECK_THROWS_AS(generate(s), ConfigError);
  s = SynthSpec{};
  s.overlap = 0.5;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SynthSpec{};
  s.users = 10;
  s.dyads = 100;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  CHECK(domain_label(1, 3) == "support");
  CHECK(domain_label(3, 5) == "d3");
}
