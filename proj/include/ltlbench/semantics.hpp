#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ltlbench/formula.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

/// Three-valued result. Undefined covers out-of-range positions and unassigned propositions.
enum class Outcome : std::uint8_t { DefinedTrue, DefinedFalse, Undefined };

std::string_view to_string(Outcome o);

inline Outcome from_bool(bool b) { return b ? Outcome::DefinedTrue : Outcome::DefinedFalse; }

// Undefined is dominant in every connective: And(Undefined, DefinedFalse) is
// Undefined, not DefinedFalse. Temporal scans stop at the first Undefined they
// meet in scan order. Yesterday at position 0 is DefinedFalse; Next at the last
// position is Undefined.

/// Outcome of `f` on `trace` at `pos`; any pos outside [0, size) gives Undefined.
Outcome eval_at(const Formula& f, const Trace& trace, std::ptrdiff_t pos);

/// Outcomes at every position of the trace, in one bottom-up pass.
std::vector<Outcome> eval_positions(const Formula& f, const Trace& trace);

/// eval_at(f, trace, 0).
Outcome satisfies(const Formula& f, const Trace& trace);

/// Deliberately naive recursive evaluator, kept line-for-line parallel to the
/// reference listing. Used as a differential oracle for eval_at.
Outcome eval_reference(const Formula& f, const Trace& trace, std::ptrdiff_t pos);

/// A formula flattened against a fixed vocabulary, for evaluating many complete
/// traces encoded as bitmasks (bit k of a state = value of vocabulary name k).
/// Atoms outside the vocabulary evaluate to Undefined.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const APVocabulary& vocab);

  /// Outcome at position 0. `scratch` is reused between calls.
  Outcome satisfies(std::span<const std::uint32_t> states, std::vector<Outcome>& scratch) const;

  struct Instr {
    Op op;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
    std::int32_t atom = -1;  // vocabulary index, -1 when absent
  };

 private:
  std::vector<Instr> program_;  // postorder; the root is last
};

}  // namespace ltlbench
