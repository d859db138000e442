#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltlbench/clients.hpp"
#include "ltlbench/items.hpp"
#include "ltlbench/metrics.hpp"
#include "ltlbench/oracle.hpp"
#include "ltlbench/promptgen.hpp"

namespace ltlbench {

/// One scored (or N/M) item; enough to re-score without the model.
struct EvalRecord {
  std::string run_id;
  std::string model;
  std::string task;
  std::string approach;   // strategy, with "+ap-free" in AP-free mode
  std::string interface;
  std::string item_id;
  std::string prompt_hash;
  std::vector<std::string> replies;  // one per turn
  /// Canonical text of what was recovered from the final reply.
  std::optional<std::string> parsed;
  std::string parse_failure;
  bool syntactically_valid = false;

  // nl2ltl / nl2pltl
  std::optional<std::string> equivalence;  // Holds, Fails or NotMeaningful
  std::optional<std::string> soundness;
  std::optional<std::string> completeness;
  std::optional<std::string> witness;

  // wff / tracechar
  std::optional<bool> expected_positive;
  std::optional<bool> predicted_positive;

  // tracegen
  std::optional<bool> satisfying_ok;
  std::optional<bool> violating_ok;

  // nl2pl
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> jaccard;

  /// Set iff the item is Not Meaningful.
  std::optional<std::string> nm_reason;
  std::string error;

  double latency_ms = 0;
  std::string started_at;
  std::string finished_at;

  bool operator==(const EvalRecord&) const = default;
};

/// item id -> (predicted proposition -> dataset variable), applied to the
/// parsed prediction before the oracle runs.
using AlignmentOverrides = std::map<std::string, std::map<std::string, std::string>>;

AlignmentOverrides load_alignment(const std::filesystem::path& path);

/// A dataset in whichever shape the task consumes.
struct TaskData {
  std::vector<Nl2LtlItem> nl2ltl;  // nl2ltl, nl2pltl, tracegen
  std::vector<WffItem> wff;
  std::vector<TraceItem> traces;
  std::vector<ApExtractionItem> ap_extraction;  // nl2pl
};

std::size_t item_count(Task task, const TaskData& data);

struct RunOptions {
  std::string run_id = "run";
  Task task = Task::Nl2Ltl;
  Interface interface = Interface::Minimal;
  Strategy strategy = Strategy::ZeroShot;
  bool ap_free = false;
  std::vector<Exemplar> exemplars;  // few-shot only
  OracleConfig oracle;
  AlignmentOverrides alignment;
  std::size_t concurrency = 4;
  double match_threshold = 0.75;
};

/// Few-shot exemplars from the first three items of an exemplar dataset.
std::vector<Exemplar> exemplars_from(Task task, Interface interface, const TaskData& data,
                                     const OracleConfig& oracle);

/// Builds, sends, parses and verifies every item of the dataset, in dataset
/// order. Throws ConfigError for an invalid setup; per-item failures become
/// N/M records.
std::vector<EvalRecord> run_task(const RunOptions& opts, const TaskData& data, ModelClient& client,
                                 const TemplateStore& store);

// ---- records on disk ----

std::string record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const std::string& line);
void write_records(const std::filesystem::path& path, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> read_records(const std::filesystem::path& path);

// ---- manifest ----

struct DatasetRef {
  std::string id;
  std::string kind;
  std::string path;
  std::string sha256;
  std::size_t items = 0;
};

struct RunManifest {
  std::string run_id;
  std::vector<DatasetRef> datasets;
  std::map<std::string, std::string> templates;  // id -> sha256
  std::vector<ModelClientSpec> models;
  OracleConfig oracle;
  std::map<std::string, std::uint64_t> seeds;
  std::size_t concurrency = 4;
  double match_threshold = 0.75;
  std::string code_version;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

// ---- reports ----

struct ReportSummary {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Writes records.jsonl, tables.md, tables.tsv, aggregates.csv and
/// manifest.json into `dir`. Group order and number formatting are fixed, so
/// equal inputs give byte-identical files.
ReportSummary emit_report(const std::vector<EvalRecord>& records, const RunManifest& manifest,
                          const std::filesystem::path& dir);

/// Semantic outcome of a translation record.
SemanticOutcome semantic_outcome(const EvalRecord& r);

// ---- experiment config ----

struct ExperimentSpec {
  Task task = Task::Nl2Ltl;
  std::filesystem::path dataset;
  std::string dataset_id;
  std::vector<Interface> interfaces;
  std::vector<Strategy> strategies;
  std::optional<std::filesystem::path> exemplars;
  bool ap_free = false;
  std::optional<std::filesystem::path> alignment;
};

struct RunConfig {
  std::string run_id = "run";
  std::filesystem::path output_dir = "report";
  std::optional<std::filesystem::path> transcript;
  std::filesystem::path templates = TemplateStore::default_dir();
  std::size_t concurrency = 4;
  std::uint64_t seed = 42;
  double match_threshold = 0.75;
  OracleConfig oracle;
  std::vector<ModelClientSpec> models;
  std::vector<ExperimentSpec> experiments;
};

/// Parses a JSON config; relative paths resolve against `base_dir`. Throws
/// ConfigError, including for any field that looks like a credential value.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

struct RunResult {
  std::vector<EvalRecord> records;
  RunManifest manifest;
};

/// Every (experiment x model x interface x strategy) cell in config order.
/// With `replay`, all clients answer from the transcript only.
RunResult run_experiments(const RunConfig& cfg, bool replay = false);

}  // namespace ltlbench
