#include "doitk/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <set>

#include "doitk/community.hpp"
#include "doitk/convgraph.hpp"
#include "doitk/corpus.hpp"
#include "doitk/doi.hpp"
#include "doitk/error.hpp"
#include "doitk/eval.hpp"
#include "doitk/io.hpp"
#include "doitk/netanalysis.hpp"
#include "doitk/nmf.hpp"
#include "doitk/rng.hpp"
#include "doitk/textprep.hpp"

namespace doitk::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Ctx {
  const config::RunConfig& cfg;
  fs::path dir;
  std::vector<std::string> outputs;
  json counts = json::object();

  fs::path at(const std::string& name) const { return dir / name; }
  std::string read(const std::string& name) const {
    if (!fs::exists(at(name))) throw DataError("missing artifact " + at(name).string());
    return io::read_file(at(name));
  }
  void write(const std::string& name, std::string_view content) {
    io::write_file(at(name), content);
    outputs.push_back(name);
  }
};

std::vector<corpus::Message> read_messages(const Ctx& c) {
  return corpus::parse_messages(c.read("messages.jsonl"), corpus::Format::jsonl).messages;
}

std::vector<std::string> read_columns(const Ctx& c) {
  std::vector<std::string> ids;
  auto lines = io::split(c.read("columns.tsv"), '\n');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = io::split(lines[i], '\t');
    if (f.size() != 2) throw DataError("columns.tsv line " + std::to_string(i + 1) + ": expected 2 fields");
    ids.push_back(f[1]);
  }
  return ids;
}

convgraph::BucketMap read_buckets(const Ctx& c, std::vector<std::string>* order) {
  convgraph::BucketMap out;
  auto lines = io::split(c.read("buckets.jsonl"), '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      auto j = json::parse(lines[i]);
      std::vector<nmf::BucketProb> list;
      for (const auto& b : j.at("buckets")) list.push_back({b.at("b").get<std::size_t>(), b.at("p").get<double>()});
      auto id = j.at("message_id").get<std::string>();
      if (order) order->push_back(id);
      out[id] = std::move(list);
    } catch (const json::exception& e) {
      throw DataError("buckets.jsonl line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

std::size_t graph_k(const Ctx& c) {
  try {
    return json::parse(c.read("graph.json")).at("k").get<std::size_t>();
  } catch (const json::exception& e) {
    throw DataError(std::string("graph.json: ") + e.what());
  }
}

// ---- stages -------------------------------------------------------------

void ingest(Ctx& c) {
  const auto& p = c.cfg.paths;
  if (p.corpus.empty()) throw ConfigError("paths.corpus is not set");
  const auto format = p.format.empty() ? corpus::format_for_path(p.corpus) : *corpus::parse_format(p.format);
  auto loaded = corpus::load_messages(p.corpus, format, {c.cfg.skip_malformed});
  if (loaded.messages.empty()) throw DataError("corpus has no usable messages");
  const auto dyads = corpus::build_dyads(loaded.messages);
  const auto stats = corpus::corpus_stats(loaded.messages, dyads, [](std::string_view t) {
    return textprep::raw_tokens(t).size();
  });
  c.write("messages.jsonl", corpus::to_jsonl(loaded.messages));
  std::string d = "user_a\tuser_b\tmessage_ids\n";
  for (const auto& dy : dyads.dyads) {
    d += dy.users.first + '\t' + dy.users.second + '\t';
    for (std::size_t i = 0; i < dy.message_ids.size(); ++i) d += (i ? "," : "") + dy.message_ids[i];
    d += '\n';
  }
  c.write("dyads.tsv", d);
  json s = {{"users", stats.user_count},
            {"dyads", stats.dyad_count},
            {"messages", stats.message_count},
            {"conv_len_mean", stats.conv_len_mean},
            {"conv_len_median", stats.conv_len_median},
            {"msg_len_mean", stats.msg_len_mean},
            {"msg_len_median", stats.msg_len_median},
            {"self_messages_skipped", loaded.self_messages_skipped},
            {"malformed_skipped", loaded.malformed_skipped}};
  c.write("corpus_stats.json", s.dump(2) + "\n");
  c.counts = {{"messages", stats.message_count}, {"dyads", stats.dyad_count}, {"users", stats.user_count}};
}

void prep(Ctx& c) {
  textprep::PrepConfig pc;
  if (!c.cfg.paths.stopwords.empty()) pc.stopwords = textprep::read_stopwords(c.cfg.paths.stopwords);
  pc.language = c.cfg.language;
  pc.high_df_cut = c.cfg.high_df_cut;
  pc.low_df_cut = c.cfg.low_df_cut;
  pc.vocab_cap = c.cfg.vocab_cap;
  pc.ngram_max = c.cfg.ngram_max;
  const auto prepared = textprep::prepare(read_messages(c), pc);
  c.write("vocabulary.tsv", textprep::write_vocabulary(prepared.vocabulary));
  c.write("matrix.txt", write_triplets(prepared.tdm.matrix));
  std::string cols = "column\tmessage_id\n";
  for (std::size_t i = 0; i < prepared.tdm.column_ids.size(); ++i)
    cols += std::to_string(i) + '\t' + prepared.tdm.column_ids[i] + '\n';
  c.write("columns.tsv", cols);
  json j = {{"terms", prepared.vocabulary.size()},
            {"messages", prepared.tdm.column_ids.size()},
            {"nonzeros", prepared.tdm.matrix.nnz()},
            {"dropped_messages", prepared.tdm.dropped},
            {"drop_fraction", prepared.tdm.drop_fraction}};
  c.write("prep.json", j.dump(2) + "\n");
  c.counts = {{"terms", prepared.vocabulary.size()}, {"messages", prepared.tdm.column_ids.size()},
              {"dropped", prepared.tdm.dropped}};
}

void factorize(Ctx& c) {
  const auto gamma = read_triplets(c.read("matrix.txt"));
  std::size_t k = c.cfg.fixed_k;
  json sel;
  if (k == 0) {
    const auto r = nmf::select_k(gamma, c.cfg.k_grid, c.cfg.holdout_fraction, c.cfg.nmf);
    k = r.best_k;
    sel = {{"grid", r.grid}, {"heldout_error", r.heldout_error}, {"heldout_entries", r.heldout_entries},
           {"holdout_fraction", c.cfg.holdout_fraction}, {"best_k", r.best_k}};
  } else {
    sel = {{"fixed_k", k}, {"best_k", k}};
  }
  c.write("select_k.json", sel.dump(2) + "\n");
  const auto fp = nmf::factorize(gamma, k, c.cfg.nmf);
  c.write("W.txt", write_triplets(fp.W));
  c.write("H.txt", write_triplets(fp.H));
  const double norm = gamma.frobenius_norm();
  json j = {{"k", k},
            {"final_error", fp.final_error},
            {"relative_error", norm > 0 ? fp.final_error / norm : 0.0},
            {"iterations", fp.iterations},
            {"converged", fp.converged},
            {"init", nmf::init_name(c.cfg.nmf.init)},
            {"objective_initial", fp.objective.front()},
            {"objective_final", fp.objective.back()}};
  c.write("nmf.json", j.dump(2) + "\n");
  c.counts = {{"k", k}, {"iterations", fp.iterations}};
}

void graph(Ctx& c) {
  const auto H = read_dense_triplets(c.read("H.txt"));
  const auto W = read_dense_triplets(c.read("W.txt"));
  const auto vocab = textprep::read_vocabulary(c.read("vocabulary.tsv"));
  const auto ids = read_columns(c);
  if (ids.size() != H.cols()) throw DataError("H has " + std::to_string(H.cols()) + " columns, columns.tsv lists " +
                                              std::to_string(ids.size()));
  const double theta = c.cfg.mode == eval::Mode::hard ? 1.0 : c.cfg.theta;
  convgraph::BucketMap buckets;
  std::string bj;
  std::size_t unbucketed = 0;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t b = 0; b < H.rows(); ++b) sum += H(b, j);
    if (!(sum > 0.0)) {
      ++unbucketed;
      continue;
    }
    auto list = nmf::representative_buckets(H, j, theta);
    json row = {{"message_id", ids[j]}, {"buckets", json::array()}};
    for (const auto& b : list) row["buckets"].push_back({{"b", b.bucket}, {"p", b.probability}});
    bj += row.dump() + "\n";
    buckets[ids[j]] = std::move(list);
  }
  c.write("buckets.jsonl", bj);

  const corpus::MessageStore store(read_messages(c));
  const auto dyads = corpus::build_dyads(store.messages());
  const auto transitions = convgraph::extract_transitions(dyads, store);
  const auto g = convgraph::build_graph(transitions, buckets, H.rows());
  std::vector<std::vector<std::string>> terms;
  const std::size_t nt = std::min(c.cfg.top_terms, vocab.size());
  for (std::size_t b = 0; b < H.rows(); ++b) terms.push_back(nmf::top_terms(W, b, nt, vocab.terms));
  c.write("graph_edges.tsv", convgraph::edges_tsv(g));
  c.write("graph_nodes.tsv", convgraph::nodes_tsv(g, terms));
  json j = {{"k", g.k},
            {"theta", theta},
            {"transitions", transitions.size()},
            {"transitions_used", g.transitions_used},
            {"transitions_skipped", g.transitions_skipped},
            {"unbucketed_messages", unbucketed},
            {"edges", g.edge_count()},
            {"total_weight", g.total_weight()}};
  c.write("graph.json", j.dump(2) + "\n");
  c.counts = {{"transitions", transitions.size()}, {"edges", g.edge_count()}};
}

void detect(Ctx& c) {
  const std::size_t k = graph_k(c);
  const auto g = convgraph::read_edges_tsv(c.read("graph_edges.tsv"), k);
  const auto u = community::symmetrize(g);
  const auto p = community::spinglass(u, c.cfg.spinglass);
  c.write("partition.tsv", community::partition_tsv(p));
  json j = {{"communities", p.count},
            {"hamiltonian", p.hamiltonian},
            {"modularity", community::modularity(u, p.membership)},
            {"restart_seed", p.seed},
            {"final_sweep_uphill_moves", p.final_sweep_uphill_moves}};
  c.write("community.json", j.dump(2) + "\n");
  c.counts = {{"communities", p.count}};
}

void assign(Ctx& c) {
  const auto part = community::read_partition_tsv(c.read("partition.tsv"));
  const auto W = read_dense_triplets(c.read("W.txt"));
  const auto vocab = textprep::read_vocabulary(c.read("vocabulary.tsv"));
  std::vector<std::string> order;
  const auto buckets = read_buckets(c, &order);
  auto model = doi::form_dois(part, W, c.cfg.top_terms, vocab.terms);
  auto assignments = doi::assign_messages(order, buckets, model);
  if (!c.cfg.paths.doi_labels.empty()) {
    doi::attach_labels(model, io::read_file(c.cfg.paths.doi_labels));
  } else if (c.cfg.label_source == "majority" && !c.cfg.paths.ground_truth.empty()) {
    eval::label_dois_by_majority(model, assignments, eval::read_ground_truth(c.cfg.paths.ground_truth));
  }
  c.write("dois.json", doi::model_json(model));
  c.write("assignments.jsonl", doi::assignments_jsonl(assignments, model));
  c.counts = {{"dois", model.dois.size()}, {"messages", assignments.size()}};
}

void evaluate(Ctx& c) {
  if (c.cfg.paths.ground_truth.empty()) throw ConfigError("paths.ground_truth is not set");
  const auto model = doi::read_model_json(c.read("dois.json"));
  const auto assignments = doi::read_assignments_jsonl(c.read("assignments.jsonl"));
  const auto truth = eval::read_ground_truth(c.cfg.paths.ground_truth);
  eval::LabelSet alphabet;
  for (std::size_t d = 0; d < model.dois.size(); ++d) alphabet.insert(model.label_of(d));
  if (c.cfg.paths.doi_labels.empty() && c.cfg.label_source == "majority") {
    // Labels no DoI won still count, as misses.
    const auto t = truth.alphabet();
    alphabet.insert(t.begin(), t.end());
  }
  const auto lists = eval::label_lists(assignments, model);
  const auto real = eval::match_assignments(lists, truth, alphabet, c.cfg.mode);
  std::vector<std::size_t> sizes;
  for (const auto& [id, l] : lists) sizes.push_back(c.cfg.mode == eval::Mode::hard ? 1 : l.size());
  const auto base = eval::random_baseline(truth, alphabet, sizes, c.cfg.baseline_trials,
                                          derive_seed(c.cfg.seed, "baseline"), c.cfg.mode);
  auto j = json::parse(eval::report_json(real, &base, c.cfg.mode));
  if (!truth.by_annotator.empty()) j["fleiss_kappa"] = eval::fleiss_kappa(truth, alphabet);
  c.write("match.json", j.dump(2) + "\n");
  c.counts = {{"scored", real.scored}, {"perfect", real.perfect}};
}

void analyze(Ctx& c) {
  const corpus::MessageStore store(read_messages(c));
  const auto dyads = corpus::build_dyads(store.messages());
  const auto model = doi::read_model_json(c.read("dois.json"));
  const auto assignments = doi::read_assignments_jsonl(c.read("assignments.jsonl"));
  const auto& p = c.cfg.paths;
  netanalysis::UserMetadata meta;
  if (!p.neighbors.empty()) meta.neighbors = netanalysis::parse_membership_csv(io::read_file(p.neighbors));
  if (!p.groups.empty()) meta.groups = netanalysis::parse_membership_csv(io::read_file(p.groups));
  if (!p.items.empty()) meta.items = netanalysis::parse_membership_csv(io::read_file(p.items));
  if (!p.kinship.empty()) meta.kin = netanalysis::parse_kinship_csv(io::read_file(p.kinship));
  netanalysis::Lexicon lexicon;
  if (!p.lexicon.empty()) lexicon = netanalysis::parse_lexicon(io::read_file(p.lexicon));
  netanalysis::Inputs in{&store, &dyads, &model, &assignments, &meta, &lexicon};
  for (const auto& [name, content] : netanalysis::analyze(in, c.cfg.analysis)) c.write(name, content);
  c.counts = {{"dois", model.dois.size()}};
}

void rethrow_with(const std::string& stage, const Error& e) {
  const std::string msg = "stage " + stage + ": " + e.what();
  switch (e.code()) {
    case ExitCode::config: throw ConfigError(msg);
    case ExitCode::data: throw DataError(msg);
    case ExitCode::numerical: throw NumericalError(msg);
    default: throw Error(e.code(), msg);
  }
}

void update_manifest(const Ctx& c, const std::string& stage, double seconds) {
  const auto path = c.at("manifest.json");
  json m = json::object();
  if (fs::exists(path)) {
    try {
      m = json::parse(io::read_file(path));
    } catch (const json::exception&) {
      m = json::object();
    }
  }
  m["tool"] = "doitk";
  m["version"] = kVersion;
  m["seed"] = c.cfg.seed;
  m["streams"] = {{"nmf", c.cfg.nmf.seed}, {"spinglass", c.cfg.spinglass.seed}, {"rewire", c.cfg.analysis.seed},
                  {"baseline", derive_seed(c.cfg.seed, "baseline")}};
  m["config"] = c.cfg.canonical();
  json outs = json::object();
  for (const auto& o : c.outputs) outs[o] = sha256_hex(io::read_file(c.at(o)));
  m["stages"][stage] = {{"seconds", seconds}, {"outputs", outs}, {"counts", c.counts}};
  m["artifacts"] = artifact_digests(c.dir);
  io::write_file(path, m.dump(2) + "\n");
}

}  // namespace

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {"ingest", "prep",   "factorize", "graph",
                                                 "detect", "assign", "evaluate",  "analyze"};
  return names;
}

void run_stage(const std::string& stage, const config::RunConfig& cfg) {
  using Fn = void (*)(Ctx&);
  static const std::map<std::string, Fn> fns = {{"ingest", ingest}, {"prep", prep},     {"factorize", factorize},
                                                {"graph", graph},   {"detect", detect}, {"assign", assign},
                                                {"evaluate", evaluate}, {"analyze", analyze}};
  auto it = fns.find(stage);
  if (it == fns.end()) throw ConfigError("unknown stage '" + stage + "'");
  Ctx c{cfg, fs::path(cfg.paths.output), {}, json::object()};
  std::error_code ec;
  fs::create_directories(c.dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.dir.string());
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(c);
  } catch (const Error& e) {
    rethrow_with(stage, e);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  update_manifest(c, stage, secs);
}

void run_all(const config::RunConfig& cfg) {
  for (const auto& s : stage_names()) {
    if (s == "evaluate" && (!cfg.eval_enabled || cfg.paths.ground_truth.empty())) continue;
    if (s == "analyze" && !cfg.analysis_enabled) continue;
    run_stage(s, cfg);
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(ExitCode::data, "sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::map<std::string, std::string> artifact_digests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto name = e.path().filename().string();
    if (name == "manifest.json" || name == "report.txt") continue;
    out[name] = sha256_hex(io::read_file(e.path()));
  }
  return out;
}

namespace {

std::string fixed(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

json load_json(const fs::path& p) {
  if (!fs::exists(p)) throw DataError("report: missing artifact " + p.string());
  try {
    return json::parse(io::read_file(p));
  } catch (const json::exception& e) {
    throw DataError("report: " + p.string() + ": " + e.what());
  }
}

}  // namespace

std::string report(const fs::path& dir) {
  const auto manifest = load_json(dir / "manifest.json");
  const auto& stages = manifest.at("stages");
  auto has = [&](const char* s) { return stages.contains(s); };
  std::string o = "doitk run report: " + dir.string() + "\n\n";
  if (has("ingest")) {
    const auto s = load_json(dir / "corpus_stats.json");
    o += "Corpus\n  users " + s["users"].dump() + ", dyads " + s["dyads"].dump() + ", messages " + s["messages"].dump() +
         "\n  conversation length mean " + fixed(s["conv_len_mean"]) + " (median " + fixed(s["conv_len_median"], 1) +
         "), message length mean " + fixed(s["msg_len_mean"]) + " (median " + fixed(s["msg_len_median"], 1) + ")\n\n";
  }
  if (has("factorize")) {
    const auto sel = load_json(dir / "select_k.json");
    const auto n = load_json(dir / "nmf.json");
    o += "Buckets\n  k = " + n["k"].dump() + ", relative reconstruction error " + fixed(n["relative_error"], 4) + "\n";
    if (sel.contains("grid")) {
      o += "  held-out error by k:";
      for (std::size_t i = 0; i < sel["grid"].size(); ++i)
        o += " " + sel["grid"][i].dump() + "=" + fixed(sel["heldout_error"][i], 4);
      o += "\n";
    }
    o += "\n";
  }
  if (has("assign")) {
    const auto m = load_json(dir / "dois.json");
    o += "Domains of Interaction (" + std::to_string(m["dois"].size()) + ")\n";
    for (const auto& d : m["dois"]) {
      std::string label = d["label"].get<std::string>();
      if (label.empty()) label = "D" + d["id"].dump();
      o += "  " + label + " [" + std::to_string(d["buckets"].size()) + " buckets]:";
      for (const auto& t : d["top_terms"]) o += " " + t.get<std::string>();
      o += "\n";
    }
    o += "\n";
  }
  if (has("evaluate")) {
    const auto m = load_json(dir / "match.json");
    o += "Match against ground truth (" + m["mode"].get<std::string>() + ")\n";
    o += "  series      perfect  first    partial  none     precision\n";
    for (const char* s : {"algorithm", "random_baseline"}) {
      if (!m.contains(s)) continue;
      const auto& r = m[s];
      char line[160];
      std::snprintf(line, sizeof line, "  %-11s %-8s %-8s %-8s %-8s %s\n", s == std::string("algorithm") ? "algorithm" : "random",
                    fixed(r["perfect"]).c_str(), fixed(r["first"]).c_str(), fixed(r["partial"]).c_str(),
                    fixed(r["none"]).c_str(), fixed(r["precision"]).c_str());
      o += line;
    }
    if (m.contains("fleiss_kappa")) o += "  Fleiss kappa " + fixed(m["fleiss_kappa"]) + "\n";
    o += "\n";
  }
  if (has("analyze")) {
    const auto a = load_json(dir / "analysis.json");
    o += "Coverage and strength\n  doi          nodes  dyads  msgs   recip  share  conv_len msg_len\n";
    for (const auto& d : a["dois"]) {
      char line[200];
      std::snprintf(line, sizeof line, "  %-12s %-6s %-6s %-6s %-6s %-6s %-8s %s\n", d["label"].get<std::string>().c_str(),
                    fixed(d["coverage"]["nodes"], 2).c_str(), fixed(d["coverage"]["dyads"], 2).c_str(),
                    fixed(d["coverage"]["messages"], 2).c_str(), fixed(d["reciprocity"], 2).c_str(),
                    fixed(d["tie_share"]["hard"], 2).c_str(), fixed(d["strength"]["conv_len"], 2).c_str(),
                    fixed(d["strength"]["msg_len"], 2).c_str());
      o += line;
    }
    o += "\nInequality and assortativity\n  graph        gini   r       stderr   rewired\n";
    auto row = [&](const std::string& name, const json& x) {
      const std::string g = x.contains("gini") ? fixed(x["gini"]["in_degree"]) : "-";
      const auto& as = x["assortativity"];
      char line[200];
      if (as.contains("r"))
        std::snprintf(line, sizeof line, "  %-12s %-6s %-7s %-8s %s\n", name.c_str(), g.c_str(), fixed(as["r"]).c_str(),
                      fixed(as["jackknife_stderr"], 4).c_str(), fixed(as["rewired_r"]).c_str());
      else
        std::snprintf(line, sizeof line, "  %-12s %-6s undefined (%s)\n", name.c_str(), g.c_str(),
                      as.value("error", std::string("n/a")).c_str());
      o += line;
    };
    for (const auto& d : a["dois"]) row(d["label"].get<std::string>(), d);
    row("full", a["full"]);
    if (a["reciprocity_vs_length"].contains("slope"))
      o += "\n  reciprocity vs length: slope " + fixed(a["reciprocity_vs_length"]["slope"], 4) + ", intercept " +
           fixed(a["reciprocity_vs_length"]["intercept"], 4) + "\n";
  }
  return o;
}

void write_synth(const synth::SynthSpec& spec, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());
  const auto c = synth::generate(spec);
  io::write_file(dir / "corpus.jsonl", corpus::to_jsonl(c.messages));
  io::write_file(dir / "labels.csv", synth::labels_csv(c));
  io::write_file(dir / "manifest.json", synth::manifest_json(spec, c));
  if (!c.stopwords.empty()) {
    std::string s;
    for (const auto& w : c.stopwords) s += w + "\n";
    io::write_file(dir / "stopwords.txt", s);
  }
}

}  // namespace doitk::pipeline
