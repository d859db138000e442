#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "ltlbench/formula.hpp"
#include "ltlbench/semantics.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

/// Bounds for the exhaustive complete-trace oracle.
struct OracleConfig {
  /// Empty means "union of the queried formulas' propositions".
  APVocabulary vocabulary;
  std::size_t min_trace_length = 1;
  std::size_t max_trace_length = 5;
  std::size_t max_vocab_size = 4;
  /// Upper bound on the number of enumerated traces per query.
  std::uint64_t trace_budget = 2'000'000;
  std::uint64_t rng_seed = 0;
};

enum class NotMeaningfulReason { ParseFailure, VocabularyMismatch, BudgetExceeded };

std::string_view to_string(NotMeaningfulReason r);

struct OracleVerdict {
  enum class Kind { Holds, Fails, NotMeaningful };

  Kind kind = Kind::Holds;
  /// Present iff kind == Fails; replaying it reproduces lhs/rhs exactly.
  std::optional<Trace> witness;
  Outcome lhs = Outcome::Undefined;
  Outcome rhs = Outcome::Undefined;
  /// Entailment failure caused by an Undefined conclusion under a true premise.
  bool undefined_conclusion = false;
  std::optional<NotMeaningfulReason> reason;
  std::uint64_t traces_checked = 0;

  bool holds() const { return kind == Kind::Holds; }
  bool fails() const { return kind == Kind::Fails; }
  bool not_meaningful() const { return kind == Kind::NotMeaningful; }

  static OracleVerdict not_meaningful_because(NotMeaningfulReason r);
};

std::string_view to_string(OracleVerdict::Kind k);

/// Satisfying/violating witnesses for a formula; construction checks both.
class TracePair {
 public:
  TracePair() = default;
  /// Throws std::invalid_argument unless satisfies(f, sat) is DefinedTrue and
  /// satisfies(f, viol) is DefinedFalse (for whichever sides are present).
  TracePair(const Formula& f, std::optional<Trace> satisfying, std::optional<Trace> violating);

  const std::optional<Trace>& satisfying() const { return satisfying_; }
  const std::optional<Trace>& violating() const { return violating_; }

 private:
  std::optional<Trace> satisfying_;
  std::optional<Trace> violating_;
};

struct TraceSearch {
  TracePair pair;
  std::uint64_t undefined_skipped = 0;
  std::uint64_t traces_checked = 0;
};

/// Total number of traces enumerate_traces would visit; throws BudgetExceeded
/// when the vocabulary guard or the trace budget is exceeded.
std::uint64_t enumeration_size(const APVocabulary& vocab, const OracleConfig& cfg);

/// Visits every complete trace over `vocab` with length in
/// [cfg.min_trace_length, cfg.max_trace_length] exactly once: lengths ascending,
/// a seeded permutation within each length. Returning false from `visit` stops.
/// Each state is a bitmask, bit k = value of vocab.names()[k].
void enumerate_traces(const APVocabulary& vocab, const OracleConfig& cfg,
                      const std::function<bool(std::span<const std::uint32_t>)>& visit);

/// Same enumeration, materialized as named traces.
void enumerate_traces(const APVocabulary& vocab, const OracleConfig& cfg,
                      const std::function<bool(const Trace&)>& visit);

Trace decode_trace(std::span<const std::uint32_t> states, const APVocabulary& vocab);

/// Three-valued equality of satisfies() on every enumerated trace.
OracleVerdict check_equivalence(const std::optional<Formula>& f, const std::optional<Formula>& g,
                                const OracleConfig& cfg);

/// Every enumerated trace with premise DefinedTrue has conclusion DefinedTrue.
OracleVerdict check_entailment(const std::optional<Formula>& premise,
                               const std::optional<Formula>& conclusion, const OracleConfig& cfg);

/// Equivalence and both entailment directions of a prediction against a
/// ground truth, in one enumeration pass.
struct Comparison {
  OracleVerdict equivalence;
  OracleVerdict soundness;     // ground truth entails prediction
  OracleVerdict completeness;  // prediction entails ground truth
};

Comparison compare_formulas(const std::optional<Formula>& ground_truth,
                            const std::optional<Formula>& prediction, const OracleConfig& cfg);

/// First DefinedTrue and first DefinedFalse trace in enumeration order.
TraceSearch find_traces(const Formula& f, const OracleConfig& cfg);

}  // namespace ltlbench
