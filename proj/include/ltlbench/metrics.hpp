#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ltlbench {

// Every rate with a zero denominator is defined as 0.

/// Unit-cost edit distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - d / max(|a|, |b|); two empty strings are fully similar.
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Lowercase, trim, collapse internal whitespace, strip terminal punctuation.
std::string normalize_phrase(std::string_view phrase);

/// |a ∩ b| / |a ∪ b|; both empty gives 1.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Jaccard over normalized phrases.
double phrase_jaccard(std::span<const std::string> a, std::span<const std::string> b);
/// Jaccard over the whitespace tokens of all normalized phrases.
double token_jaccard(std::span<const std::string> a, std::span<const std::string> b);

struct PhraseMatch {
  std::size_t predicted;  // index into the predicted list
  std::size_t gold;       // index into the gold list
  double similarity;
};

struct PropMatchResult {
  std::vector<PhraseMatch> matching;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  /// Normalized similarity of every (predicted, gold) pair, row-major.
  std::vector<std::vector<double>> similarities;
  /// Mean similarity over the matched pairs (0 when there are none).
  double mean_matched_similarity = 0;
};

/// Greedy one-to-one matching by descending similarity; pairs at or above
/// `threshold` count as matches. Ties break on (predicted, gold) index.
PropMatchResult match_prop_sets(std::span<const std::string> predicted,
                                std::span<const std::string> gold, double threshold = 0.75);

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  void add(bool predicted_positive, bool actually_positive);
};

struct ClassificationMetrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double fpr = 0;
  double fnr = 0;
};

ClassificationMetrics classification_metrics(const ConfusionCounts& c);

/// One scored translation item, reduced to what aggregation needs.
struct SemanticOutcome {
  enum class Status { Equivalent, NotEquivalent, NotMeaningful };
  Status status = Status::NotMeaningful;
  bool sound = false;
  bool complete = false;
  bool syntactically_valid = false;
};

struct SemanticTally {
  std::uint64_t equivalent = 0;
  std::uint64_t not_equivalent = 0;
  std::uint64_t not_meaningful = 0;
  std::uint64_t sound = 0;
  std::uint64_t complete = 0;
  std::uint64_t syntactically_valid = 0;
  std::uint64_t total = 0;

  std::uint64_t meaningful() const { return equivalent + not_equivalent; }
};

struct SemanticRates {
  SemanticTally tally;
  double equivalence_accuracy = 0;  // equivalent / meaningful
  double soundness = 0;             // sound / meaningful
  double completeness = 0;          // complete / meaningful
  double syntactic_correctness = 0; // syntactically_valid / total
  double not_meaningful_share = 0;  // not_meaningful / total
};

SemanticRates aggregate_semantic(std::span<const SemanticOutcome> records);
SemanticRates rates_from_tally(const SemanticTally& tally);

}  // namespace ltlbench
