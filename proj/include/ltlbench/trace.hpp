#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltlbench/formula.hpp"

namespace ltlbench {

/// Partial assignment of propositions at one trace position. Names are unique;
/// insertion order is kept for printing, lookup is by name.
class State {
 public:
  State() = default;
  State(std::initializer_list<std::pair<std::string, bool>> assignments);

  /// Throws TraceFormatError on a duplicate name, std::invalid_argument on an illegal one.
  void assign(std::string name, bool value);
  std::optional<bool> lookup(std::string_view name) const;

  const std::vector<std::pair<std::string, bool>>& assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }

  friend bool operator==(const State&, const State&) = default;

 private:
  std::vector<std::pair<std::string, bool>> assignments_;
};

using Trace = std::vector<State>;

/// Every state assigns every name in `vocab`.
bool is_complete_for(const Trace& trace, const APVocabulary& vocab);

/// Parses `[{x1=1, x2=0}; {x1=0, x2=0}]`. Throws TraceFormatError.
Trace parse_trace(std::string_view text);
/// Canonical text form; parse_trace inverts it.
std::string print_trace(const Trace& trace);

/// Python literal of the code-completion interface: `[[("p", True)], [("p", False)]]`.
std::string print_trace_literal(const Trace& trace);

}  // namespace ltlbench
