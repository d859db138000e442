#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ltlbench/errors.hpp"
#include "ltlbench/items.hpp"
#include "ltlbench/oracle.hpp"

namespace ltlbench {

// ---- dataset files ----
//
// One JSON object per line (JSONL); field schemas are in docs/datasets.md.
// Blank lines are ignored.

enum class DatasetKind { Nl2Ltl, Wff, Trace, ApExtraction };

std::string_view to_string(DatasetKind k);  // nl2ltl, wff, trace, ap_extraction
std::optional<DatasetKind> parse_dataset_kind(std::string_view name);

struct LoadRejection {
  std::size_t line = 0;
  std::string item_id;  // empty when the id itself could not be read
  std::string reason;
};

struct LoadReport {
  std::string source;
  std::size_t records = 0;  // non-blank lines seen
  std::vector<LoadRejection> rejected;
  std::vector<std::string> warnings;
};

struct LoadOptions {
  /// Skip invalid records (listing them in the report) instead of throwing.
  bool allow_partial = false;
};

template <typename Item>
struct Loaded {
  std::vector<Item> items;
  LoadReport report;
};

// Without allow_partial the first invalid record throws SchemaError (bad JSON,
// missing or mistyped field) or InvariantViolation (item-level rule broken).
// A missing file throws IoError.

Loaded<Nl2LtlItem> load_nl2ltl(const std::filesystem::path& path, const LoadOptions& opts = {});
Loaded<WffItem> load_wff(const std::filesystem::path& path, const LoadOptions& opts = {});
Loaded<TraceItem> load_traces(const std::filesystem::path& path, const LoadOptions& opts = {});
Loaded<ApExtractionItem> load_ap_extraction(const std::filesystem::path& path,
                                            const LoadOptions& opts = {});

Loaded<Nl2LtlItem> read_nl2ltl(std::istream& in, const std::string& source, const LoadOptions& opts = {});
Loaded<WffItem> read_wff(std::istream& in, const std::string& source, const LoadOptions& opts = {});
Loaded<TraceItem> read_traces(std::istream& in, const std::string& source, const LoadOptions& opts = {});
Loaded<ApExtractionItem> read_ap_extraction(std::istream& in, const std::string& source,
                                            const LoadOptions& opts = {});

void write_jsonl(std::ostream& out, const std::vector<Nl2LtlItem>& items);
void write_jsonl(std::ostream& out, const std::vector<WffItem>& items);
void write_jsonl(std::ostream& out, const std::vector<TraceItem>& items);
void write_jsonl(std::ostream& out, const std::vector<ApExtractionItem>& items);

/// Tab-separated export with a header row; tabs and newlines in text fields
/// are written as \t and \n.
void write_tsv(std::ostream& out, const std::vector<Nl2LtlItem>& items);
void write_tsv(std::ostream& out, const std::vector<WffItem>& items);
void write_tsv(std::ostream& out, const std::vector<TraceItem>& items);
void write_tsv(std::ostream& out, const std::vector<ApExtractionItem>& items);

/// Item-level rules shared by the loaders. Throw InvariantViolation.
void validate(const Nl2LtlItem& item);
void validate(const WffItem& item);
void validate(const TraceItem& item);
void validate(const ApExtractionItem& item);

// ---- formula sampling ----

struct SamplerConfig {
  APVocabulary vocabulary{"p", "q", "r"};
  std::size_t min_depth = 0;
  std::size_t max_depth = 8;
  /// Relative weight of each production. Ops absent from the map get weight 0;
  /// Atom/True/False weights split the depth-0 leaves.
  std::map<Op, double> weights = default_weights();

  static std::map<Op, double> default_weights();
};

/// Top-down weighted sampling of a formula whose depth is drawn uniformly from
/// [min_depth, max_depth] and then met exactly. Deterministic in `rng`.
Formula sample_formula(const SamplerConfig& cfg, std::mt19937_64& rng);
Formula sample_formula(const SamplerConfig& cfg, std::uint64_t seed);

/// Truncated geometric depth: P(d) proportional to (1-p)^d on [0, cap].
std::size_t sample_geometric_depth(std::mt19937_64& rng, double p = 0.3, std::size_t cap = 8);

// ---- malformation ----

enum class Mutation {
  DeleteLeftOperand,
  DeleteRightOperand,
  DropParenthesis,
  DuplicateBinaryOperator,
  TruncateSuffix,
};

std::string_view to_string(Mutation m);

/// Number of distinct sites `m` can act on in print_ltl(f).
std::size_t mutation_sites(const Formula& f, Mutation m);

/// Applies `m` at site `site` (< mutation_sites) of print_ltl(f). The result
/// is not checked for malformedness.
std::string apply_mutation(const Formula& f, Mutation m, std::size_t site);

struct MalformedString {
  std::string text;
  Mutation mutation;
  std::size_t site;
};

/// One seeded mutation of print_ltl(f) that check_wff rejects; mutations and
/// sites are tried in a seeded order until one breaks the formula. Throws
/// MutationExhausted if none does.
MalformedString mutate_malformed(const Formula& f, std::uint64_t seed);

/// DS6-style corpus: well-formed and malformed strings in equal shares (odd
/// counts favour well-formed), geometric depths capped at max_depth.
std::vector<WffItem> generate_wff_corpus(std::size_t count, std::uint64_t seed,
                                         const SamplerConfig& cfg = {});

// ---- trace corpus ----

struct CorpusSkip {
  std::string item_id;
  std::string side;  // "satisfying", "violating" or "both"
  std::string reason;
};

struct TraceCorpus {
  std::vector<TraceItem> items;
  std::vector<CorpusSkip> skipped;
};

/// Up to two TraceItems per formula (ids "<id>-sat" / "<id>-viol") from
/// find_traces, shuffled under `seed`. Missing sides and budget overruns are
/// logged in `skipped`.
TraceCorpus build_trace_corpus(const std::vector<Nl2LtlItem>& items, const OracleConfig& cfg,
                               std::uint64_t seed);

// ---- synthetic NL corpora ----

/// Template-built NL/formula pairs shaped like the translation benchmarks:
/// ids "syn-0001"... Future tense uses future operators only; past tense
/// patterns use past operators.
std::vector<Nl2LtlItem> generate_synthetic_nl2ltl(std::size_t count, std::uint64_t seed,
                                                  Tense tense = Tense::Future);

}  // namespace ltlbench
