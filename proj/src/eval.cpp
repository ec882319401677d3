#include "doitk/eval.hpp"

#include <algorithm>
#include <json.hpp>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/rng.hpp"

namespace doitk::eval {

LabelSet GroundTruth::alphabet() const {
  LabelSet out;
  for (const auto& [id, s] : labels) out.insert(s.begin(), s.end());
  for (const auto& [id, per] : by_annotator)
    for (const auto& [a, s] : per) out.insert(s.begin(), s.end());
  return out;
}

namespace {

LabelSet parse_labels(std::string_view field) {
  LabelSet out;
  for (const auto& l : io::split(field, ';')) {
    auto t = io::trim(l);
    if (!t.empty()) out.insert(std::string(t));
  }
  return out;
}

}  // namespace

GroundTruth parse_ground_truth(std::string_view csv) {
  auto records = io::parse_csv(csv);
  if (records.empty()) throw DataError("ground truth: empty file");
  const auto& header = records.front().fields;
  const bool annotated = header.size() == 3 && header[2] == "annotator_id";
  if (!(header.size() >= 2 && header[0] == "message_id" && header[1] == "labels") ||
      (header.size() == 3 && !annotated) || header.size() > 3)
    throw DataError("ground truth: expected header message_id,labels[,annotator_id]");

  GroundTruth gt;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size())
      throw DataError("ground truth line " + std::to_string(rec.line) + ": expected " +
                      std::to_string(header.size()) + " fields");
    const auto& id = rec.fields[0];
    if (id.empty()) throw DataError("ground truth line " + std::to_string(rec.line) + ": empty message_id");
    auto labels = parse_labels(rec.fields[1]);
    if (annotated) {
      auto& per = gt.by_annotator[id];
      if (!per.emplace(rec.fields[2], std::move(labels)).second)
        throw DataError("ground truth line " + std::to_string(rec.line) + ": duplicate annotator for message");
    } else {
      if (!gt.labels.emplace(id, std::move(labels)).second)
        throw DataError("ground truth line " + std::to_string(rec.line) + ": duplicate message_id " + id);
    }
  }
  for (const auto& [id, per] : gt.by_annotator) {
    std::map<std::string, std::size_t> votes;
    for (const auto& [a, s] : per)
      for (const auto& l : s) ++votes[l];
    LabelSet consensus;
    for (const auto& [l, v] : votes)
      if (2 * v >= per.size()) consensus.insert(l);
    gt.labels[id] = std::move(consensus);
  }
  return gt;
}

GroundTruth read_ground_truth(const std::string& path) { return parse_ground_truth(io::read_file(path)); }

Mode parse_mode(std::string_view s) {
  if (s == "soft") return Mode::soft;
  if (s == "hard") return Mode::hard;
  throw ConfigError("unknown assignment mode '" + std::string(s) + "'");
}

std::string match_name(Match m) {
  switch (m) {
    case Match::perfect: return "perfect";
    case Match::first: return "first";
    case Match::partial: return "partial";
    case Match::none: return "none";
  }
  return "none";
}

Match classify(const LabelList& algo, const LabelSet& truth, Mode mode) {
  if (algo.empty()) return Match::none;
  if (mode == Mode::hard) return truth.contains(algo[0]) ? Match::perfect : Match::none;
  const LabelSet set(algo.begin(), algo.end());
  if (set == truth) return Match::perfect;
  if (truth.contains(algo[0])) return Match::first;
  for (const auto& l : set)
    if (truth.contains(l)) return Match::partial;
  return Match::none;
}

double precision(const LabelList& algo, const LabelSet& truth, Mode mode) {
  if (algo.empty()) return 0.0;
  if (mode == Mode::hard) return truth.contains(algo[0]) ? 1.0 : 0.0;
  const LabelSet set(algo.begin(), algo.end());
  std::size_t hit = 0;
  for (const auto& l : set)
    if (truth.contains(l)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(set.size());
}

namespace {

struct Tally {
  std::size_t counts[4] = {0, 0, 0, 0};
  double precision_sum = 0.0;
  std::size_t scored = 0;

  void add(const LabelList& algo, const LabelSet& truth, Mode mode) {
    ++counts[static_cast<int>(classify(algo, truth, mode))];
    precision_sum += precision(algo, truth, mode);
    ++scored;
  }
  MatchReport report() const {
    MatchReport r;
    r.scored = scored;
    if (scored == 0) return r;
    const double n = static_cast<double>(scored);
    r.perfect = static_cast<double>(counts[0]) / n;
    r.first = static_cast<double>(counts[1]) / n;
    r.partial = static_cast<double>(counts[2]) / n;
    r.none = static_cast<double>(counts[3]) / n;
    r.precision = precision_sum / n;
    return r;
  }
};

void check_alphabet(const LabelSet& labels, const LabelSet& alphabet, const char* what) {
  for (const auto& l : labels)
    if (!alphabet.contains(l)) throw DataError(std::string("label alphabet mismatch: ") + what + " label '" + l + "'");
}

}  // namespace

MatchReport match_assignments(const std::map<std::string, LabelList>& algo, const GroundTruth& truth,
                              const LabelSet& alphabet, Mode mode) {
  check_alphabet(truth.alphabet(), alphabet, "ground truth");
  for (const auto& [id, l] : algo) check_alphabet(LabelSet(l.begin(), l.end()), alphabet, "assignment");
  Tally t;
  std::size_t unlabeled = 0, unassigned = 0;
  for (const auto& [id, s] : truth.labels) {
    if (s.empty()) {
      ++unlabeled;
      continue;
    }
    auto it = algo.find(id);
    if (it == algo.end() || it->second.empty()) {
      ++unassigned;
      continue;
    }
    t.add(it->second, s, mode);
  }
  auto r = t.report();
  r.unlabeled_excluded = unlabeled;
  r.unassigned_excluded = unassigned;
  return r;
}

MatchReport random_baseline(const GroundTruth& truth, const LabelSet& alphabet, const std::vector<std::size_t>& sizes,
                            std::size_t trials, std::uint64_t seed, Mode mode) {
  if (trials < 1) throw ConfigError("random_baseline: trials must be >= 1");
  if (alphabet.empty()) throw DataError("random_baseline: empty label alphabet");
  if (sizes.empty()) throw DataError("random_baseline: empty size distribution");
  check_alphabet(truth.alphabet(), alphabet, "ground truth");
  const std::vector<std::string> letters(alphabet.begin(), alphabet.end());
  MatchReport avg;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(seed, "baseline", trial);
    Tally t;
    for (const auto& [id, s] : truth.labels) {
      if (s.empty()) continue;
      const std::size_t size = std::clamp<std::size_t>(sizes[uniform_index(rng, sizes.size())], 1, letters.size());
      LabelList pool = letters;
      // Partial Fisher-Yates: the first `size` entries form a uniform ordered sample.
      for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
      pool.resize(size);
      t.add(pool, s, mode);
    }
    auto r = t.report();
    avg.perfect += r.perfect;
    avg.first += r.first;
    avg.partial += r.partial;
    avg.none += r.none;
    avg.precision += r.precision;
    avg.scored = r.scored;
  }
  const double n = static_cast<double>(trials);
  avg.perfect /= n;
  avg.first /= n;
  avg.partial /= n;
  avg.none /= n;
  avg.precision /= n;
  return avg;
}

double fleiss_kappa_binary(const std::vector<std::vector<int>>& ratings) {
  if (ratings.empty()) throw DataError("fleiss_kappa: no items");
  const std::size_t raters = ratings.front().size();
  if (raters < 2) throw DataError("fleiss_kappa: need at least 2 annotators");
  const double n = static_cast<double>(raters);
  double p_bar = 0.0, ones = 0.0;
  for (const auto& item : ratings) {
    if (item.size() != raters) throw DataError("fleiss_kappa: items rated by different numbers of annotators");
    double c1 = 0.0;
    for (int r : item) c1 += r ? 1.0 : 0.0;
    const double c0 = n - c1;
    p_bar += (c1 * (c1 - 1.0) + c0 * (c0 - 1.0)) / (n * (n - 1.0));
    ones += c1;
  }
  const double items = static_cast<double>(ratings.size());
  p_bar /= items;
  const double p1 = ones / (items * n), p0 = 1.0 - p1;
  const double p_e = p1 * p1 + p0 * p0;
  if (p_e >= 1.0) {
    if (p_bar >= 1.0) return 1.0;
    throw NumericalError("fleiss_kappa: expected agreement is 1");
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

double fleiss_kappa(const GroundTruth& truth, const LabelSet& alphabet) {
  if (truth.by_annotator.empty()) throw DataError("fleiss_kappa: ground truth has no annotator column");
  if (alphabet.empty()) throw DataError("fleiss_kappa: empty label alphabet");
  double sum = 0.0;
  for (const auto& label : alphabet) {
    std::vector<std::vector<int>> ratings;
    for (const auto& [id, per] : truth.by_annotator) {
      std::vector<int> row;
      for (const auto& [a, s] : per) row.push_back(s.contains(label) ? 1 : 0);
      ratings.push_back(std::move(row));
    }
    sum += fleiss_kappa_binary(ratings);
  }
  return sum / static_cast<double>(alphabet.size());
}

std::map<std::string, LabelList> label_lists(const std::vector<doi::Assignment>& assignments,
                                             const doi::DoiModel& model) {
  std::map<std::string, LabelList> out;
  for (const auto& a : assignments) {
    LabelList l;
    for (const auto& d : a.dois) {
      auto name = model.label_of(d.doi);
      if (std::find(l.begin(), l.end(), name) == l.end()) l.push_back(std::move(name));
    }
    out[a.message_id] = std::move(l);
  }
  return out;
}

void label_dois_by_majority(doi::DoiModel& model, const std::vector<doi::Assignment>& assignments,
                            const GroundTruth& planted) {
  std::vector<std::map<std::string, std::size_t>> votes(model.dois.size());
  for (const auto& a : assignments) {
    if (a.dois.empty()) continue;
    auto it = planted.labels.find(a.message_id);
    if (it == planted.labels.end()) continue;
    for (const auto& l : it->second) ++votes.at(a.dois.front().doi)[l];
  }
  for (std::size_t d = 0; d < model.dois.size(); ++d) {
    std::string best;
    std::size_t best_n = 0;
    for (const auto& [l, n] : votes[d])
      if (n > best_n) {
        best = l;
        best_n = n;
      }
    model.dois[d].label = best;
  }
}

std::string report_json(const MatchReport& real, const MatchReport* baseline, Mode mode) {
  auto obj = [](const MatchReport& r) {
    return nlohmann::json{{"perfect", r.perfect}, {"first", r.first},     {"partial", r.partial},
                          {"none", r.none},       {"precision", r.precision}, {"scored", r.scored}};
  };
  nlohmann::json j;
  j["mode"] = mode == Mode::hard ? "hard" : "soft";
  j["algorithm"] = obj(real);
  j["algorithm"]["unlabeled_excluded"] = real.unlabeled_excluded;
  j["algorithm"]["unassigned_excluded"] = real.unassigned_excluded;
  if (baseline) j["random_baseline"] = obj(*baseline);
  return j.dump(2) + "\n";
}

}  // namespace doitk::eval
