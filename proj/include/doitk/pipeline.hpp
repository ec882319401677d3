#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "doitk/config.hpp"
#include "doitk/synth.hpp"

namespace doitk::pipeline {

/// Stage names in execution order.
const std::vector<std::string>& stage_names();

/// Runs one stage. Inputs are read from the run directory (and, for ingest,
/// from the configured corpus); outputs and the manifest entry are written
/// there. Errors keep their type and gain a "stage <name>:" prefix.
void run_stage(const std::string& stage, const config::RunConfig& cfg);

/// ingest through analyze; evaluate and analyze only when enabled (evaluate
/// also needs a ground truth path).
void run_all(const config::RunConfig& cfg);

/// Text summary of a run directory; DataError naming any missing artifact.
std::string report(const std::filesystem::path& run_dir);

std::string sha256_hex(std::string_view data);
/// SHA-256 of every regular file in the directory except manifest.json.
std::map<std::string, std::string> artifact_digests(const std::filesystem::path& dir);

/// corpus.jsonl, labels.csv, manifest.json (and stopwords.txt when requested).
void write_synth(const synth::SynthSpec& spec, const std::filesystem::path& dir);

}  // namespace doitk::pipeline
