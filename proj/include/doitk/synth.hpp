#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "doitk/corpus.hpp"

namespace doitk::synth {

struct SynthSpec {
  std::size_t domains = 3;
  std::size_t subtopics = 3;         // token pools per domain
  std::size_t vocab = 40;            // tokens per pool
  double overlap = 0.05;             // chance a token leaks from another domain
  std::size_t users = 4000;
  std::size_t dyads = 5000;
  double mean_conv_len = 4.0;        // geometric, support >= 1
  double mean_msg_len = 8.0;         // Poisson, floor 1
  double rho = 0.95;                 // reply stays in the current domain
  std::vector<double> start_weights;   // first-message domain weights; empty = uniform
  std::vector<double> switch_weights;  // target weights when switching; empty = uniform
  double reply_prob = 0.7;           // next message comes from the other user
  double reply_prob_jitter = 0.0;    // per-dyad uniform jitter of reply_prob
  double survival_penalty = 1.0;     // continuation factor after a non-reply
  std::size_t status_hubs = 0;       // status-start dyads target these users
  double hub_exponent = 1.0;         // Zipf exponent over hubs
  double oov_fraction = 0.0;         // junk messages made of hapax tokens
  bool stopword_noise = false;       // sprinkle English stopwords into messages
  std::uint64_t seed = 0;

  void validate() const;
};

/// Canonical label of a planted domain (status, support, knowledge, then d<i>).
std::string domain_label(std::size_t d, std::size_t domains);

struct SynthCorpus {
  std::vector<corpus::Message> messages;
  std::vector<int> domain;                       // per message; -1 for junk
  std::vector<std::string> label_names;
  std::vector<double> planted_share;             // per domain, mean over dyads
  std::size_t planted_crossover = 0;             // first step status is not the top domain; 0 if never
  std::vector<std::string> stopwords;            // when stopword_noise
};

SynthCorpus generate(const SynthSpec& spec);

/// Step-n domain distribution of the planted chain (n = 1, 2, ...).
std::vector<std::vector<double>> planted_step_distribution(const SynthSpec& spec, std::size_t steps);
std::size_t planted_crossover(const SynthSpec& spec);

/// message_id,labels
std::string labels_csv(const SynthCorpus& c);
std::string manifest_json(const SynthSpec& spec, const SynthCorpus& c);

}  // namespace doitk::synth
