#include "doitk/config.hpp"

#include <charconv>
#include <functional>

#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/rng.hpp"

namespace doitk::config {

namespace {

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return std::string(v.substr(1, v.size() - 2));
  return std::string(v);
}

// Strips a trailing comment outside quotes.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

KeyValues parse(std::string_view text) {
  KeyValues kv;
  std::string section;
  auto lines = io::split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto t = io::trim(strip_comment(lines[ln]));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("config line " + std::to_string(ln + 1) + ": bad section header");
      section = std::string(io::trim(t.substr(1, t.size() - 2)));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ConfigError("config line " + std::to_string(ln + 1) + ": expected key = value");
    const auto key = io::trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(ln + 1) + ": empty key");
    if (section.empty()) throw ConfigError("config line " + std::to_string(ln + 1) + ": key outside a section");
    kv[section + "." + std::string(key)] = unquote(io::trim(t.substr(eq + 1)));
  }
  return kv;
}

void apply_override(KeyValues& kv, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--set expects section.key=value, got '" + std::string(assignment) + "'");
  const auto key = io::trim(assignment.substr(0, eq));
  if (key.find('.') == std::string_view::npos) throw ConfigError("--set key must be section.key: '" + std::string(key) + "'");
  kv[std::string(key)] = unquote(io::trim(assignment.substr(eq + 1)));
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e) throw ConfigError("config " + key + ": invalid number '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config " + key + ": expected true or false, got '" + v + "'");
}

std::vector<std::size_t> parse_list(const std::string& key, std::string v) {
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("config " + key + ": unterminated list");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::size_t> out;
  for (const auto& part : io::split(v, ',')) {
    auto t = std::string(io::trim(part));
    if (t.empty()) continue;
    out.push_back(parse_number<std::size_t>(key, t));
  }
  if (out.empty()) throw ConfigError("config " + key + ": empty list");
  return out;
}

}  // namespace

RunConfig RunConfig::from(const KeyValues& kv) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto str = [](std::string& dst) -> Setter { return [&dst](const std::string&, const std::string& v) { dst = v; }; };
  auto real = [](double& dst) -> Setter {
    return [&dst](const std::string& k, const std::string& v) { dst = parse_number<double>(k, v); };
  };
  auto size = [](std::size_t& dst) -> Setter {
    return [&dst](const std::string& k, const std::string& v) { dst = parse_number<std::size_t>(k, v); };
  };
  auto flag = [](bool& dst) -> Setter {
    return [&dst](const std::string& k, const std::string& v) { dst = parse_bool(k, v); };
  };
  std::map<std::string, Setter> setters = {
      {"paths.corpus", str(c.paths.corpus)},
      {"paths.format", str(c.paths.format)},
      {"paths.stopwords", str(c.paths.stopwords)},
      {"paths.lexicon", str(c.paths.lexicon)},
      {"paths.ground_truth", str(c.paths.ground_truth)},
      {"paths.doi_labels", str(c.paths.doi_labels)},
      {"paths.neighbors", str(c.paths.neighbors)},
      {"paths.groups", str(c.paths.groups)},
      {"paths.items", str(c.paths.items)},
      {"paths.kinship", str(c.paths.kinship)},
      {"paths.output", str(c.paths.output)},
      {"prep.language",
       [&](const std::string& k, const std::string& v) {
         auto lang = stem::parse_language(v);
         if (!lang) throw ConfigError("config " + k + ": unknown language '" + v + "'");
         c.language = *lang;
       }},
      {"prep.high_df_cut", real(c.high_df_cut)},
      {"prep.low_df_cut", real(c.low_df_cut)},
      {"prep.vocab_cap", size(c.vocab_cap)},
      {"prep.ngram_max", size(c.ngram_max)},
      {"nmf.max_iter", size(c.nmf.max_iter)},
      {"nmf.rel_tol", real(c.nmf.rel_tol)},
      {"nmf.init", [&](const std::string&, const std::string& v) { c.nmf.init = nmf::parse_init(v); }},
      {"nmf.kernel",
       [&](const std::string& k, const std::string& v) {
         if (v == "parallel")
           c.nmf.kernel = nmf::Kernel::parallel;
         else if (v == "reference")
           c.nmf.kernel = nmf::Kernel::reference;
         else
           throw ConfigError("config " + k + ": expected parallel or reference");
       }},
      {"nmf.k_grid", [&](const std::string& k, const std::string& v) { c.k_grid = parse_list(k, v); }},
      {"nmf.k", size(c.fixed_k)},
      {"nmf.holdout_fraction", real(c.holdout_fraction)},
      {"nmf.top_terms", size(c.top_terms)},
      {"spinglass.gamma", real(c.spinglass.gamma)},
      {"spinglass.spins_max", size(c.spinglass.spins_max)},
      {"spinglass.start_temp", real(c.spinglass.start_temp)},
      {"spinglass.stop_temp", real(c.spinglass.stop_temp)},
      {"spinglass.cooling", real(c.spinglass.cooling)},
      {"spinglass.sweeps_per_temp", size(c.spinglass.sweeps_per_temp)},
      {"spinglass.restarts", size(c.spinglass.restarts)},
      {"assign.mode", [&](const std::string&, const std::string& v) { c.mode = eval::parse_mode(v); }},
      {"assign.theta", real(c.theta)},
      {"eval.enabled", flag(c.eval_enabled)},
      {"eval.baseline_trials", size(c.baseline_trials)},
      {"eval.label_source",
       [&](const std::string& k, const std::string& v) {
         if (v != "majority" && v != "file") throw ConfigError("config " + k + ": expected majority or file");
         c.label_source = v;
       }},
      {"analysis.enabled", flag(c.analysis_enabled)},
      {"analysis.tie_share",
       [&](const std::string& k, const std::string& v) {
         if (v != "hard" && v != "soft") throw ConfigError("config " + k + ": expected hard or soft");
         c.analysis.soft_tie_share = v == "soft";
       }},
      {"analysis.graph",
       [&](const std::string& k, const std::string& v) {
         if (v != "multigraph" && v != "simple") throw ConfigError("config " + k + ": expected multigraph or simple");
         c.analysis.simple_graph = v == "simple";
       }},
      {"analysis.wealth",
       [&](const std::string& k, const std::string& v) {
         if (v == "in_degree")
           c.analysis.wealth = netanalysis::Wealth::in_degree;
         else if (v == "in_strength")
           c.analysis.wealth = netanalysis::Wealth::in_strength;
         else
           throw ConfigError("config " + k + ": expected in_degree or in_strength");
       }},
      {"analysis.rewire_replicates", size(c.analysis.rewire_replicates)},
      {"run.seed", [&](const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"run.skip_malformed", flag(c.skip_malformed)},
  };
  for (const auto& [k, v] : kv) {
    auto it = setters.find(k);
    if (it == setters.end()) throw ConfigError("config: unknown key '" + k + "'");
    it->second(k, v);
  }
  c.nmf.validate();
  c.spinglass.validate();
  if (!(c.holdout_fraction > 0.0 && c.holdout_fraction < 0.5))
    throw ConfigError("config nmf.holdout_fraction: must lie in (0, 0.5)");
  if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError("config assign.theta: must lie in (0, 1]");
  if (c.top_terms < 1) throw ConfigError("config nmf.top_terms: must be >= 1");
  if (c.baseline_trials < 1) throw ConfigError("config eval.baseline_trials: must be >= 1");
  if (!c.paths.format.empty() && !corpus::parse_format(c.paths.format))
    throw ConfigError("config paths.format: expected jsonl or csv");
  c.nmf.seed = derive_seed(c.seed, "nmf");
  c.spinglass.seed = derive_seed(c.seed, "spinglass");
  c.analysis.seed = derive_seed(c.seed, "rewire");
  return c;
}

std::string RunConfig::canonical() const {
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  auto d = [](double v) { return io::format_double(v); };
  std::string grid;
  for (std::size_t i = 0; i < k_grid.size(); ++i) grid += (i ? ", " : "") + std::to_string(k_grid[i]);
  std::string o;
  o += "[paths]\n";
  o += "corpus = " + q(paths.corpus) + "\nformat = " + q(paths.format) + "\nstopwords = " + q(paths.stopwords) +
       "\nlexicon = " + q(paths.lexicon) + "\nground_truth = " + q(paths.ground_truth) + "\ndoi_labels = " +
       q(paths.doi_labels) + "\nneighbors = " + q(paths.neighbors) + "\ngroups = " + q(paths.groups) +
       "\nitems = " + q(paths.items) + "\nkinship = " + q(paths.kinship) + "\noutput = " + q(paths.output) + "\n";
  o += "\n[prep]\nlanguage = " + std::string(stem::language_name(language)) + "\nhigh_df_cut = " + d(high_df_cut) +
       "\nlow_df_cut = " + d(low_df_cut) + "\nvocab_cap = " + std::to_string(vocab_cap) +
       "\nngram_max = " + std::to_string(ngram_max) + "\n";
  o += "\n[nmf]\nmax_iter = " + std::to_string(nmf.max_iter) + "\nrel_tol = " + d(nmf.rel_tol) +
       "\ninit = " + nmf::init_name(nmf.init) +
       "\nkernel = " + std::string(nmf.kernel == nmf::Kernel::reference ? "reference" : "parallel") +
       "\nk_grid = [" + grid + "]\nk = " + std::to_string(fixed_k) + "\nholdout_fraction = " + d(holdout_fraction) +
       "\ntop_terms = " + std::to_string(top_terms) + "\n";
  o += "\n[spinglass]\ngamma = " + d(spinglass.gamma) + "\nspins_max = " + std::to_string(spinglass.spins_max) +
       "\nstart_temp = " + d(spinglass.start_temp) + "\nstop_temp = " + d(spinglass.stop_temp) +
       "\ncooling = " + d(spinglass.cooling) + "\nsweeps_per_temp = " + std::to_string(spinglass.sweeps_per_temp) +
       "\nrestarts = " + std::to_string(spinglass.restarts) + "\n";
  o += "\n[assign]\nmode = " + std::string(mode == eval::Mode::hard ? "hard" : "soft") + "\ntheta = " + d(theta) + "\n";
  o += "\n[eval]\nenabled = " + std::string(eval_enabled ? "true" : "false") +
       "\nbaseline_trials = " + std::to_string(baseline_trials) + "\nlabel_source = " + label_source + "\n";
  o += "\n[analysis]\nenabled = " + std::string(analysis_enabled ? "true" : "false") +
       "\ntie_share = " + std::string(analysis.soft_tie_share ? "soft" : "hard") +
       "\ngraph = " + std::string(analysis.simple_graph ? "simple" : "multigraph") +
       "\nwealth = " + std::string(analysis.wealth == netanalysis::Wealth::in_degree ? "in_degree" : "in_strength") +
       "\nrewire_replicates = " + std::to_string(analysis.rewire_replicates) + "\n";
  o += "\n[run]\nseed = " + std::to_string(seed) + "\nskip_malformed = " + std::string(skip_malformed ? "true" : "false") + "\n";
  return o;
}

}  // namespace doitk::config
