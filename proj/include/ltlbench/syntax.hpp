#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ltlbench/errors.hpp"
#include "ltlbench/formula.hpp"

namespace ltlbench {

// Infix grammar, loosest to tightest binding:
//   <->  (right-assoc)
//   ->   (right-assoc)
//   |    (left-assoc)
//   &    (left-assoc)
//   U S  (left-assoc, equal precedence)
//   ! X F G Y O H  (prefix)
// Operator letters are only operators when they form a whole identifier token,
// so "Xp" is an atomic proposition and "X p" is Next(p).

/// Parses the concrete LTL syntax. Throws SyntaxError.
Formula parse_ltl(std::string_view text);

struct ParseOutcome {
  std::optional<Formula> formula;
  std::optional<SyntaxErrorKind> error_kind;
  std::string error;  // non-empty iff formula is empty
};

/// Non-throwing variant of parse_ltl.
ParseOutcome try_parse_ltl(std::string_view text);

struct WffVerdict {
  bool well_formed = false;
  std::optional<SyntaxErrorKind> kind;
  std::string reason;
};

/// Exact well-formedness oracle: well-formed iff parse_ltl accepts.
WffVerdict check_wff(std::string_view text);

/// Parses a constructor expression such as
/// `formulaToFind = LAnd(AtomicProposition("p"), Next(AtomicProposition("q")))`.
/// Surrounding code fences and the `formulaToFind =` prefix are optional.
/// Throws SyntaxError, or LexError for an illegal proposition name.
Formula parse_constructor_form(std::string_view text);

/// Single-line, fully parenthesized rendering; parse_ltl inverts it exactly.
std::string print_ltl(const Formula& f);

/// Constructor-expression rendering; parse_constructor_form inverts it exactly.
std::string print_constructor_form(const Formula& f);

/// Drops markdown code fences (``` lines) and surrounding inline backticks.
std::string strip_code_fences(std::string_view text);

}  // namespace ltlbench
