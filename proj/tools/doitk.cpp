// doitk command line front-end.
#include <CLI11.hpp>
#include <iostream>

#include "doitk/config.hpp"
#include "doitk/error.hpp"
#include "doitk/io.hpp"
#include "doitk/pipeline.hpp"
#include "doitk/synth.hpp"

namespace {

struct Common {
  std::string config_file;
  std::vector<std::string> sets;
  std::string corpus, output, ground_truth, stopwords, lexicon, mode;
  long long seed = -1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_file, "Config file");
  app->add_option("--set", c.sets, "Override section.key=value (repeatable)");
  app->add_option("--corpus", c.corpus, "Corpus file (jsonl or csv)");
  app->add_option("-o,--output", c.output, "Run directory");
  app->add_option("--ground-truth", c.ground_truth, "Ground truth CSV");
  app->add_option("--stopwords", c.stopwords, "Stopword list");
  app->add_option("--lexicon", c.lexicon, "Category lexicon");
  app->add_option("--mode", c.mode, "Assignment mode: soft or hard");
  app->add_option("--seed", c.seed, "Global seed");
}

doitk::config::RunConfig load(const Common& c) {
  doitk::config::KeyValues kv;
  if (!c.config_file.empty()) kv = doitk::config::parse(doitk::io::read_file(c.config_file));
  for (const auto& s : c.sets) doitk::config::apply_override(kv, s);
  if (!c.corpus.empty()) kv["paths.corpus"] = c.corpus;
  if (!c.output.empty()) kv["paths.output"] = c.output;
  if (!c.ground_truth.empty()) kv["paths.ground_truth"] = c.ground_truth;
  if (!c.stopwords.empty()) kv["paths.stopwords"] = c.stopwords;
  if (!c.lexicon.empty()) kv["paths.lexicon"] = c.lexicon;
  if (!c.mode.empty()) kv["assign.mode"] = c.mode;
  if (c.seed >= 0) kv["run.seed"] = std::to_string(c.seed);
  return doitk::config::RunConfig::from(kv);
}

std::vector<double> parse_weights(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& p : doitk::io::split(s, ',')) {
    try {
      out.push_back(std::stod(p));
    } catch (const std::logic_error&) {
      throw doitk::ConfigError("bad weight '" + p + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domains of Interaction toolkit"};
  app.require_subcommand(1);

  Common common;
  std::vector<CLI::App*> stage_cmds;
  for (const auto& s : doitk::pipeline::stage_names()) {
    auto* sub = app.add_subcommand(s, "Run the " + s + " stage");
    add_common(sub, common);
    stage_cmds.push_back(sub);
  }
  auto* run = app.add_subcommand("run", "Run the full pipeline");
  add_common(run, common);

  std::string report_dir;
  auto* rep = app.add_subcommand("report", "Summarise a run directory");
  rep->add_option("run_dir", report_dir, "Run directory")->required();

  doitk::synth::SynthSpec spec;
  std::string synth_out = "synth", start_w, switch_w;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus");
  syn->add_option("-o,--output", synth_out, "Output directory");
  syn->add_option("--domains", spec.domains);
  syn->add_option("--subtopics", spec.subtopics);
  syn->add_option("--vocab", spec.vocab);
  syn->add_option("--overlap", spec.overlap);
  syn->add_option("--users", spec.users);
  syn->add_option("--dyads", spec.dyads);
  syn->add_option("--mean-conv-len", spec.mean_conv_len);
  syn->add_option("--mean-msg-len", spec.mean_msg_len);
  syn->add_option("--rho", spec.rho);
  syn->add_option("--start-weights", start_w, "Comma-separated, one per domain");
  syn->add_option("--switch-weights", switch_w, "Comma-separated, one per domain");
  syn->add_option("--reply-prob", spec.reply_prob);
  syn->add_option("--reply-prob-jitter", spec.reply_prob_jitter);
  syn->add_option("--survival-penalty", spec.survival_penalty);
  syn->add_option("--status-hubs", spec.status_hubs);
  syn->add_option("--hub-exponent", spec.hub_exponent);
  syn->add_option("--oov-fraction", spec.oov_fraction);
  syn->add_flag("--stopword-noise", spec.stopword_noise);
  syn->add_option("--seed", spec.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(doitk::ExitCode::config);
  }

  try {
    if (*syn) {
      spec.start_weights = parse_weights(start_w);
      spec.switch_weights = parse_weights(switch_w);
      doitk::pipeline::write_synth(spec, synth_out);
      std::cout << "wrote " << synth_out << "\n";
    } else if (*rep) {
      const auto text = doitk::pipeline::report(report_dir);
      doitk::io::write_file(std::filesystem::path(report_dir) / "report.txt", text);
      std::cout << text;
    } else if (*run) {
      const auto cfg = load(common);
      doitk::pipeline::run_all(cfg);
      std::cout << "run complete: " << cfg.paths.output << "\n";
    } else {
      for (auto* sub : stage_cmds)
        if (*sub) {
          doitk::pipeline::run_stage(sub->get_name(), load(common));
          std::cout << sub->get_name() << " done\n";
        }
    }
  } catch (const doitk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(doitk::ExitCode::data);
  }
  return 0;
}
