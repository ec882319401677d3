#include "doitk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <set>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/rng.hpp"

namespace doitk::synth {

namespace {

const std::vector<std::string> kStopwords = {"the", "and", "of", "to", "a", "in", "is", "it", "you", "that",
                                             "he", "was", "for", "on", "are", "with", "as", "i", "his", "they"};

std::vector<double> normalised(std::vector<double> w, std::size_t n) {
  if (w.empty()) w.assign(n, 1.0);
  double s = 0.0;
  for (double x : w) s += x;
  for (auto& x : w) x /= s;
  return w;
}

std::string numbered(char prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i);
  return buf;
}

std::size_t draw(Rng& rng, const std::vector<double>& w) {
  double r = uniform01(rng);
  for (std::size_t i = 0; i < w.size(); ++i) {
    r -= w[i];
    if (r < 0.0) return i;
  }
  return w.size() - 1;
}

}  // namespace

void SynthSpec::validate() const {
  if (domains < 2) throw ConfigError("synth: domains must be >= 2");
  if (subtopics < 1 || vocab < 1) throw ConfigError("synth: subtopics and vocab must be >= 1");
  if (!(overlap >= 0.0 && overlap < 0.5)) throw ConfigError("synth: overlap must lie in [0, 0.5)");
  if (users < 2 || dyads < 1) throw ConfigError("synth: need >= 2 users and >= 1 dyad");
  if (dyads > users * (users - 1) / 2) throw ConfigError("synth: more dyads than user pairs");
  if (!(mean_conv_len >= 1.0)) throw ConfigError("synth: mean_conv_len must be >= 1");
  if (!(mean_msg_len > 0.0)) throw ConfigError("synth: mean_msg_len must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("synth: rho must lie in [0, 1]");
  if (!start_weights.empty() && start_weights.size() != domains)
    throw ConfigError("synth: start_weights needs one entry per domain");
  if (!switch_weights.empty() && switch_weights.size() != domains)
    throw ConfigError("synth: switch_weights needs one entry per domain");
  for (const auto* w : {&start_weights, &switch_weights}) {
    double s = 0.0;
    for (double x : *w) {
      if (!(x >= 0.0)) throw ConfigError("synth: weights must be non-negative");
      s += x;
    }
    if (!w->empty() && s <= 0.0) throw ConfigError("synth: weights must not all be zero");
  }
  if (!(reply_prob >= 0.0 && reply_prob <= 1.0)) throw ConfigError("synth: reply_prob must lie in [0, 1]");
  if (!(reply_prob_jitter >= 0.0)) throw ConfigError("synth: reply_prob_jitter must be >= 0");
  if (!(survival_penalty >= 0.0 && survival_penalty <= 1.0))
    throw ConfigError("synth: survival_penalty must lie in [0, 1]");
  if (status_hubs >= users) throw ConfigError("synth: status_hubs must be < users");
  if (!(oov_fraction >= 0.0 && oov_fraction < 1.0)) throw ConfigError("synth: oov_fraction must lie in [0, 1)");
}

std::string domain_label(std::size_t d, std::size_t domains) {
  static const char* names[] = {"status", "support", "knowledge"};
  if (domains <= 3 && d < 3) return names[d];
  return "d" + std::to_string(d);
}

std::vector<std::vector<double>> planted_step_distribution(const SynthSpec& spec, std::size_t steps) {
  const std::size_t D = spec.domains;
  const auto sw = normalised(spec.switch_weights, D);
  std::vector<std::vector<double>> T(D, std::vector<double>(D, 0.0));
  for (std::size_t i = 0; i < D; ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < D; ++j)
      if (j != i) others += sw[j];
    for (std::size_t j = 0; j < D; ++j)
      T[i][j] = j == i ? spec.rho : (others > 0.0 ? (1.0 - spec.rho) * sw[j] / others : (1.0 - spec.rho) / double(D - 1));
  }
  std::vector<std::vector<double>> out;
  auto p = normalised(spec.start_weights, D);
  for (std::size_t n = 0; n < steps; ++n) {
    out.push_back(p);
    std::vector<double> q(D, 0.0);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) q[j] += p[i] * T[i][j];
    p = std::move(q);
  }
  return out;
}

std::size_t planted_crossover(const SynthSpec& spec) {
  const auto dist = planted_step_distribution(spec, 1000);
  for (std::size_t n = 0; n < dist.size(); ++n) {
    const double best_other = *std::max_element(dist[n].begin() + 1, dist[n].end());
    if (dist[n][0] < best_other) return n + 1;
  }
  return 0;
}

SynthCorpus generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t D = spec.domains;
  Rng rng(derive_seed(spec.seed, "synth"));
  const auto start = normalised(spec.start_weights, D);
  const auto sw = normalised(spec.switch_weights, D);

  SynthCorpus out;
  for (std::size_t d = 0; d < D; ++d) out.label_names.push_back(domain_label(d, D));
  if (spec.stopword_noise) out.stopwords = kStopwords;

  const int uw = std::max<int>(4, static_cast<int>(std::to_string(spec.users).size()));
  const int vw = std::max<int>(2, static_cast<int>(std::to_string(spec.vocab).size()));
  auto user = [&](std::size_t i) { return numbered('u', i + 1, uw); };

  std::vector<double> hub_w;
  for (std::size_t h = 0; h < spec.status_hubs; ++h) hub_w.push_back(std::pow(double(h + 1), -spec.hub_exponent));
  hub_w = spec.status_hubs ? normalised(hub_w, spec.status_hubs) : hub_w;

  std::poisson_distribution<int> msg_len(spec.mean_msg_len);
  const double cont = 1.0 - 1.0 / spec.mean_conv_len;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> share_sum(D, 0.0);
  std::size_t counter = 0, junk = 0;

  auto token = [&](std::size_t d, std::size_t s) {
    if (spec.overlap > 0.0 && uniform01(rng) < spec.overlap) {
      const std::size_t own = d;
      d = uniform_index(rng, D - 1);
      if (d >= own) ++d;
      s = uniform_index(rng, spec.subtopics);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "d%zus%zuw%0*zu", d, s, vw, uniform_index(rng, spec.vocab));
    return std::string(buf);
  };

  for (std::size_t k = 0; k < spec.dyads; ++k) {
    std::size_t dom = draw(rng, start);
    // Pick a fresh unordered pair; status-start dyads target hubs.
    std::size_t a = 0, b = 0;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > 1000) throw ConfigError("synth: could not place a new dyad; raise users");
      if (spec.status_hubs && dom == 0) {
        a = spec.status_hubs + uniform_index(rng, spec.users - spec.status_hubs);
        b = draw(rng, hub_w);
      } else {
        a = uniform_index(rng, spec.users);
        b = uniform_index(rng, spec.users - 1);
        if (b >= a) ++b;
      }
      if (pairs.emplace(std::min(a, b), std::max(a, b)).second) break;
    }
    double reply = spec.reply_prob;
    if (spec.reply_prob_jitter > 0.0)
      reply = std::clamp(reply + (2.0 * uniform01(rng) - 1.0) * spec.reply_prob_jitter, 0.0, 1.0);

    std::vector<double> dyad_share(D, 0.0);
    std::size_t len = 0;
    bool from_a = true;
    for (bool first = true;; first = false) {
      bool replied = true;
      if (!first) {
        if (uniform01(rng) < spec.rho) {
          // stay in kind
        } else {
          std::vector<double> w = sw;
          w[dom] = 0.0;
          double s = 0.0;
          for (double x : w) s += x;
          if (s <= 0.0)
            for (std::size_t j = 0; j < D; ++j) w[j] = j == dom ? 0.0 : 1.0;
          dom = draw(rng, normalised(w, D));
        }
        replied = uniform01(rng) < reply;
        if (replied) from_a = !from_a;
      }
      corpus::Message m;
      m.id = numbered('m', counter + 1, 6);
      m.sender = user(from_a ? a : b);
      m.recipient = user(from_a ? b : a);
      m.timestamp = static_cast<std::int64_t>(counter);
      ++counter;
      const bool is_junk = spec.oov_fraction > 0.0 && uniform01(rng) < spec.oov_fraction;
      const std::size_t n_tok = std::max(1, msg_len(rng));
      if (is_junk) {
        for (std::size_t t = 0; t < n_tok; ++t) {
          if (t) m.text += ' ';
          m.text += numbered('x', ++junk, 7);
        }
        out.domain.push_back(-1);
      } else {
        const std::size_t s = uniform_index(rng, spec.subtopics);
        for (std::size_t t = 0; t < n_tok; ++t) {
          if (t) m.text += ' ';
          if (spec.stopword_noise && uniform01(rng) < 0.3) m.text += kStopwords[uniform_index(rng, kStopwords.size())] + ' ';
          m.text += token(dom, s);
        }
        out.domain.push_back(static_cast<int>(dom));
        dyad_share[dom] += 1.0;
      }
      out.messages.push_back(std::move(m));
      ++len;
      double c = cont;
      if (!replied) c *= spec.survival_penalty;
      if (uniform01(rng) >= c) break;
    }
    double labeled = 0.0;
    for (double x : dyad_share) labeled += x;
    if (labeled > 0.0)
      for (std::size_t d = 0; d < D; ++d) share_sum[d] += dyad_share[d] / labeled;
  }
  out.planted_share.resize(D);
  for (std::size_t d = 0; d < D; ++d) out.planted_share[d] = share_sum[d] / static_cast<double>(spec.dyads);
  out.planted_crossover = planted_crossover(spec);
  return out;
}

std::string labels_csv(const SynthCorpus& c) {
  std::string out = "message_id,labels\n";
  for (std::size_t i = 0; i < c.messages.size(); ++i) {
    out += c.messages[i].id + ',';
    if (c.domain[i] >= 0) out += c.label_names[static_cast<std::size_t>(c.domain[i])];
    out += '\n';
  }
  return out;
}

std::string manifest_json(const SynthSpec& spec, const SynthCorpus& c) {
  nlohmann::json j;
  j["spec"] = {{"domains", spec.domains},
               {"subtopics", spec.subtopics},
               {"vocab", spec.vocab},
               {"overlap", spec.overlap},
               {"users", spec.users},
               {"dyads", spec.dyads},
               {"mean_conv_len", spec.mean_conv_len},
               {"mean_msg_len", spec.mean_msg_len},
               {"rho", spec.rho},
               {"start_weights", normalised(spec.start_weights, spec.domains)},
               {"switch_weights", normalised(spec.switch_weights, spec.domains)},
               {"reply_prob", spec.reply_prob},
               {"reply_prob_jitter", spec.reply_prob_jitter},
               {"survival_penalty", spec.survival_penalty},
               {"status_hubs", spec.status_hubs},
               {"hub_exponent", spec.hub_exponent},
               {"oov_fraction", spec.oov_fraction},
               {"stopword_noise", spec.stopword_noise},
               {"seed", spec.seed}};
  std::vector<std::size_t> counts(spec.domains, 0);
  std::size_t junk = 0;
  for (int d : c.domain) (d < 0 ? junk : counts[static_cast<std::size_t>(d)])++;
  j["planted"] = {{"labels", c.label_names},
                  {"messages", c.messages.size()},
                  {"messages_per_domain", counts},
                  {"junk_messages", junk},
                  {"dyad_share", c.planted_share},
                  {"crossover_step", c.planted_crossover}};
  return j.dump(2) + "\n";
}

}  // namespace doitk::synth
